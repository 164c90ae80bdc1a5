// Copyright 2026 The sicrep Authors
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

#include <stdexcept>
#include <string>

namespace sicrep {

/// Broad failure classes. The CLI maps each one to a fixed exit code.
enum class ErrorKind {
    Input,        ///< malformed data, wrong shapes or dimensions
    Physicality,  ///< data is well formed but not a valid state/channel/SIC
    Domain,       ///< numerical domain violation (log branch, singular matrix)
    Optimizer,    ///< an optimizer failed to converge
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& msg) { throw Error(ErrorKind::Input, msg); }
[[noreturn]] inline void throw_physicality(const std::string& msg) { throw Error(ErrorKind::Physicality, msg); }
[[noreturn]] inline void throw_domain(const std::string& msg) { throw Error(ErrorKind::Domain, msg); }
[[noreturn]] inline void throw_optimizer(const std::string& msg) { throw Error(ErrorKind::Optimizer, msg); }

const char* to_string(ErrorKind kind) noexcept;

}  // namespace sicrep
