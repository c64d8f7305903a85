// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace awt::cli {

enum ExitCode : int {
    kSuccess = 0,
    kDomainError = 1,  // bad length, unknown wavelet, failed check
    kIoError = 2,      // unreadable/unwritable files, malformed input, corrupt bank
};

/// Entry point of the `awt` tool: decompose | filters | verify | image.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace awt::cli
