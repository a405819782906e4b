#pragma once

namespace cwq {

/// Entry point of the `cwq` tool. Exit codes: 0 success, 1 numerical failure
/// or failed verification, 2 usage error.
int run_cli(int argc, char** argv);

}  // namespace cwq
