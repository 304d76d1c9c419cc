/*
   Copyright 2026 The pgen Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace pgen {

/// Error categories. Each maps onto one CLI exit code.
enum class ErrorKind {
    usage,     // bad arguments or precondition violation (exit 2)
    resource,  // request exceeds a configured cap (exit 3)
    data,      // malformed input data or file format (exit 4)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    int exit_code() const noexcept {
        switch (kind_) {
        case ErrorKind::usage: return 2;
        case ErrorKind::resource: return 3;
        case ErrorKind::data: return 4;
        }
        return 1;
    }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_usage(const std::string& msg) {
    throw Error(ErrorKind::usage, msg);
}
[[noreturn]] inline void throw_resource(const std::string& msg) {
    throw Error(ErrorKind::resource, msg);
}
[[noreturn]] inline void throw_data(const std::string& msg) {
    throw Error(ErrorKind::data, msg);
}

}  // namespace pgen
