#pragma once

namespace qisim::cli {

// Full command-line driver behind the `qi` binary. Exit codes: 0 success,
// 1 verification failures, 2 bad usage or invalid parameters, 3 evaluation
// failures at runtime (infeasible operating point, unstable derivative).
int cli_main(int argc, char** argv);

}  // namespace qisim::cli
