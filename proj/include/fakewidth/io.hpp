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

#ifndef FAKEWIDTH_IO_HPP
#define FAKEWIDTH_IO_HPP

#include <string>

#include "fakewidth/experiments.hpp"

namespace fakewidth {

// Shortest decimal form that round-trips to the same double, so emitted
// files are byte-stable across platforms and worker counts.
std::string format_double(double v);

// CSV rendering of a sweep: fixed header
// r,fpr,fnr,success_rate,fpr_se,fnr_se,success_se
// one row per radius, LF line endings, trailing newline.
std::string sweep_csv(const SweepResult& result);

// Writes text to path, replacing any existing content. Throws
// std::runtime_error when the file cannot be opened or written.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fakewidth

#endif  // FAKEWIDTH_IO_HPP
