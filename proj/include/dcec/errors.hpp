/*
   Copyright 2026 The dcec Authors

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
#include <vector>

namespace dcec {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter record, configuration document or experiment spec broke one
/// of its invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Reading or writing a file failed. The message carries the path.
class IoError : public Error {
public:
    using Error::Error;
};

/// Sink for non-fatal diagnostics such as clamped (degenerate) rate bounds.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message)
{
    if (sink != nullptr) {
        sink->push_back(std::move(message));
    }
}

} // namespace dcec
