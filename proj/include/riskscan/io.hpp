/*
 * Copyright 2026 The riskscan Authors.
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
#ifndef RISKSCAN_IO_HPP
#define RISKSCAN_IO_HPP

#include <string>
#include <vector>

namespace riskscan {

// Shortest decimal representation that round-trips the double exactly.
// Locale independent; used for every numeric field the pipeline writes so
// outputs are byte-stable and re-parseable without loss.
std::string format_double(double v);

// Split one CSV line on commas. No quoting support: the formats this tool
// reads and writes never emit quoted fields.
std::vector<std::string> split_csv(const std::string& line);

// Strict double / integer parsers: the whole field must be consumed.
bool parse_double(const std::string& field, double& out);
bool parse_int64(const std::string& field, long long& out);

// Write `content` to `path` atomically (temp file + rename). Throws
// InputError on I/O failure and removes the temp file.
void write_file_atomic(const std::string& path, const std::string& content);

// Read an entire file; throws InputError if unreadable.
std::string read_file(const std::string& path);

}  // namespace riskscan

#endif
