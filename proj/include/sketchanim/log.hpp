// Copyright 2026 The Sketchanim Authors
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

#pragma once

#include <string_view>

namespace sketchanim {

enum class LogLevel {
    Quiet,
    Warning,
    Info,
};

void set_log_level(LogLevel level);
LogLevel log_level();

/// Writes one line to stderr when the level allows it.
void log_warning(std::string_view message);
void log_info(std::string_view message);

} // namespace sketchanim
