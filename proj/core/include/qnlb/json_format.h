// Copyright 2026 The qnlb Authors
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

#ifndef QNLB_JSON_FORMAT_H
#define QNLB_JSON_FORMAT_H

#include <string>

namespace qnlb {

inline constexpr int kOutputDigits = 10;

/// x rounded to `digits` significant decimal digits (locale independent).
double round_significant(double x, int digits = kOutputDigits);

/// "%.{digits}g" rendering with '.' as the decimal separator.
std::string format_number(double x, int digits = kOutputDigits);

}  // namespace qnlb

#endif  // QNLB_JSON_FORMAT_H
