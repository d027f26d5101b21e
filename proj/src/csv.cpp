// Copyright (c) the levelset authors
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

#include "levelset/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "levelset/error.hpp"

namespace levelset {
namespace {

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string RowError(long row, const std::string& what) {
  return "row " + std::to_string(row) + ": " + what;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void WritePointCloudCsv(const PointCloud& x, std::ostream& os) {
  for (int d = 0; d < x.dims(); ++d) os << (d ? "," : "") << 'x' << d;
  os << '\n';
  for (int j = 0; j < x.count(); ++j) {
    for (int d = 0; d < x.dims(); ++d) os << (d ? "," : "") << FormatDouble(x.coords()(d, j));
    os << '\n';
  }
}

void SavePointCloud(const PointCloud& x, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path);
  WritePointCloudCsv(x, os);
  if (!os) throw InputError("write failed: " + path);
}

PointCloud ReadPointCloudCsv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("empty point-cloud file");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const std::vector<std::string> header = SplitFields(Trim(line));
  const int dims = static_cast<int>(header.size());
  for (int d = 0; d < dims; ++d) {
    if (Trim(header[d]) != "x" + std::to_string(d)) {
      throw InputError("header must read x0,...,x" + std::to_string(dims - 1));
    }
  }
  std::vector<double> values;
  long row = 0;
  while (std::getline(is, line)) {
    line = Trim(line);
    if (line.empty()) continue;
    ++row;
    const std::vector<std::string> fields = SplitFields(line);
    if (static_cast<int>(fields.size()) != dims) {
      throw InputError(RowError(row, "expected " + std::to_string(dims) + " columns, found " +
                                         std::to_string(fields.size())));
    }
    for (int d = 0; d < dims; ++d) {
      const std::string f = Trim(fields[d]);
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(f.c_str(), &end);
      if (f.empty() || end != f.c_str() + f.size()) {
        throw InputError(RowError(row, "column x" + std::to_string(d) + " is not a number"));
      }
      if (!std::isfinite(v)) {
        throw InputError(RowError(row, "column x" + std::to_string(d) + " is not finite"));
      }
      if (std::abs(v) > 0.5) {
        throw InputError(RowError(row, "column x" + std::to_string(d) + " outside [-1/2, 1/2]"));
      }
      values.push_back(v);
    }
  }
  if (row == 0) throw InputError("point-cloud file has no rows");
  Eigen::MatrixXd coords(dims, row);
  for (long j = 0; j < row; ++j) {
    for (int d = 0; d < dims; ++d) coords(d, j) = values[j * dims + d];
  }
  return PointCloud(std::move(coords));
}

PointCloud LoadPointCloud(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path);
  return ReadPointCloudCsv(is);
}

void WriteMatrixCsv(const Eigen::MatrixXd& m, std::ostream& os,
                    const std::vector<std::string>& header) {
  for (size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  if (!header.empty()) os << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << FormatDouble(m(r, c));
    os << '\n';
  }
}

void SaveMatrixCsv(const Eigen::MatrixXd& m, const std::string& path,
                   const std::vector<std::string>& header) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path);
  WriteMatrixCsv(m, os, header);
  if (!os) throw InputError("write failed: " + path);
}

}  // namespace levelset
