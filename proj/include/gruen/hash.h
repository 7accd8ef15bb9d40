// Copyright 2026 The GRUEN Metric Authors.
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

#ifndef GRUEN_HASH_H_
#define GRUEN_HASH_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace gruen {

// Lowercase hex SHA-256 digests.
std::string Sha256Hex(std::string_view bytes);
// Throws Error(kMissingFile) if the file cannot be opened.
std::string Sha256File(const std::filesystem::path& path);

}  // namespace gruen

#endif  // GRUEN_HASH_H_
