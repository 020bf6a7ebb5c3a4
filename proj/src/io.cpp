// Copyright 2026 fakewidth authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fakewidth/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace fakewidth {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("failed to format a double");
  return std::string(buf, res.ptr);
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "r,fpr,fnr,success_rate,fpr_se,fnr_se,success_se\n";
  for (const auto& row : result.rows) {
    out += format_double(row.r);
    out += ',';
    out += format_double(row.rates.fpr);
    out += ',';
    out += format_double(row.rates.fnr);
    out += ',';
    out += format_double(row.rates.success_rate);
    out += ',';
    out += format_double(row.rates.fpr_se);
    out += ',';
    out += format_double(row.rates.fnr_se);
    out += ',';
    out += format_double(row.rates.success_se);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream stream(path, std::ios::binary | std::ios::trunc);
  if (!stream) throw std::runtime_error("cannot open output file: " + path);
  stream.write(text.data(), static_cast<std::streamsize>(text.size()));
  stream.flush();
  if (!stream) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace fakewidth
