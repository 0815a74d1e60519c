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

#include "qnlb/json_format.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qnlb {

std::string format_number(double x, int digits) {
    if (digits < 1 || digits > 17) {
        throw std::invalid_argument("format_number: digits must lie in [1, 17]");
    }
    if (!std::isfinite(x)) {
        return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    }
    // to_chars is locale independent, unlike printf.
    char buf[64];
    auto result = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, digits);
    std::string out(buf, result.ptr);
    if (out == "-0") {
        out = "0";
    }
    return out;
}

double round_significant(double x, int digits) {
    if (!std::isfinite(x)) {
        return x;
    }
    std::string text = format_number(x, digits);
    double out = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

}  // namespace qnlb
