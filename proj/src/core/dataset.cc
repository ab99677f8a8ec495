// Copyright 2026 The dpgauss Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpgauss/core/dataset.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/ascii.h"

namespace dpgauss {

absl::StatusOr<Dataset> Dataset::Create(Eigen::MatrixXd points) {
  if (points.cols() < 1 || points.rows() < 1) {
    return absl::InvalidArgumentError("core: dataset needs n >= 1 and d >= 1");
  }
  if (!points.allFinite()) {
    return absl::InvalidArgumentError("core: dataset has non-finite entries");
  }
  return Dataset(std::move(points));
}

Dataset Dataset::Slice(int begin, int end) const {
  return Dataset(points_.middleCols(begin, end - begin));
}

absl::StatusOr<Dataset> Dataset::WithRow(int i, const Eigen::VectorXd& x) const {
  if (i < 0 || i >= size() || x.size() != dim() || !x.allFinite()) {
    return absl::InvalidArgumentError("core: invalid row replacement");
  }
  Eigen::MatrixXd copy = points_;
  copy.col(i) = x;
  return Dataset(std::move(copy));
}

Eigen::VectorXd Dataset::Mean() const { return points_.rowwise().mean(); }

bool Dataset::Neighboring(const Dataset& a, const Dataset& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) return false;
  int differing = 0;
  for (int i = 0; i < a.size(); ++i) {
    if (a.points_.col(i) != b.points_.col(i)) ++differing;
  }
  return differing == 1;
}

absl::StatusOr<Dataset> ParseDataset(const std::string& text) {
  std::vector<std::vector<double>> rows;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    std::vector<double> row;
    for (absl::string_view field : absl::StrSplit(line, ',')) {
      field = absl::StripAsciiWhitespace(field);
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc() || ptr != field.data() + field.size() ||
          !std::isfinite(value)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "core: line ", line_number, ": invalid field '", field, "'"));
      }
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "core: line ", line_number, ": expected ", rows.front().size(),
          " fields, got ", row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return absl::InvalidArgumentError("core: empty dataset");
  Eigen::MatrixXd points(rows.front().size(), rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) points(j, i) = rows[i][j];
  }
  return Dataset::Create(std::move(points));
}

absl::StatusOr<Dataset> LoadDataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("core: cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseDataset(buffer.str());
}

std::string FormatDataset(const Dataset& data) {
  std::string out;
  char buf[32];
  for (int i = 0; i < data.size(); ++i) {
    for (int j = 0; j < data.dim(); ++j) {
      const auto [ptr, ec] =
          std::to_chars(buf, buf + sizeof(buf), data.points()(j, i));
      if (j > 0) out.push_back(',');
      out.append(buf, ptr);
    }
    out.push_back('\n');
  }
  return out;
}

absl::Status SaveDataset(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) return absl::InternalError(absl::StrCat("core: cannot write ", path));
  out << FormatDataset(data);
  return absl::OkStatus();
}

}  // namespace dpgauss
