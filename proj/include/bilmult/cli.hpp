// SPDX-License-Identifier: Apache-2.0
#pragma once

// Batch command-line front end. Exit codes: 0 success, 1 domain error (including an
// INVALID verdict), 2 usage error.

#include <iosfwd>

namespace bilmult {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bilmult
