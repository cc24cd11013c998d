// Copyright 2026 The confnet Authors. All Rights Reserved.
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

#ifndef CONFNET_IO_UTIL_HPP_
#define CONFNET_IO_UTIL_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace confnet {

// Writes to a sibling temp file and renames it over `path` on success, so a
// failed write never leaves a partial file behind.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace confnet

#endif  // CONFNET_IO_UTIL_HPP_
