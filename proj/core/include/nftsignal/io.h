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

#ifndef NFTSIGNAL_IO_H_
#define NFTSIGNAL_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace nftsignal::io {

// Writes `content` to a sibling temp file and renames it over `path`, so a
// reader never observes a partially written artifact.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

std::string ReadFile(const std::filesystem::path& path);

// Lower-case hex SHA-256 of the file contents.
std::string Sha256File(const std::filesystem::path& path);
std::string Sha256Hex(std::string_view data);

// Shortest decimal string that round-trips to the same double.
std::string FormatDouble(double value);

// Fixed-point with `digits` decimals, as used in report tables.
std::string FormatFixed(double value, int digits);

}  // namespace nftsignal::io

#endif  // NFTSIGNAL_IO_H_
