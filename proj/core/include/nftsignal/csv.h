/*
 * Copyright 2026 The nftsignal Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Minimal RFC 4180 CSV reading and writing.
#ifndef NFTSIGNAL_CSV_H_
#define NFTSIGNAL_CSV_H_

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace nftsignal::csv {

// Splits one record. Quoted fields may contain commas and doubled quotes;
// embedded newlines are not supported. Throws DataError on an unterminated
// quote, citing `line`.
std::vector<std::string> ParseLine(std::string_view line, std::size_t line_no);

// Quotes `field` only when it contains a comma, quote or newline.
std::string Escape(std::string_view field);

std::string JoinRow(const std::vector<std::string>& fields);

// Line-oriented reader that tracks 1-based physical line numbers and skips
// blank lines. A trailing '\r' is stripped.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Returns false at end of input.
  bool Next(std::vector<std::string>& fields);
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace nftsignal::csv

#endif  // NFTSIGNAL_CSV_H_
