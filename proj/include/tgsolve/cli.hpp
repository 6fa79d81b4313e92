// Copyright 2026 The tgsolve Authors
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

#ifndef TGSOLVE_CLI_HPP_
#define TGSOLVE_CLI_HPP_

#include <iosfwd>

namespace tgs::cli {

// Runs one subcommand. Machine-readable JSON goes to `out`, human summaries
// and errors to `err`. Exit codes: 0 success, 1 domain error (one-line
// machine-parsable reason), 2 usage error. The numeric work all happens in
// the library; this is a thin adapter.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace tgs::cli

#endif  // TGSOLVE_CLI_HPP_
