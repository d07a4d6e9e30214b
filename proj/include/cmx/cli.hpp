#ifndef CMX_CLI_HPP
#define CMX_CLI_HPP

namespace cmx {

/// Command-line entry point.  Parses one subcommand (validate, counts,
/// laplacian, betti, cones, decompose, estimate, sparsify, learn, gen,
/// experiment), runs it, and writes its artifacts under --out (falling
/// back to the CMX_OUT_DIR environment variable, then the working
/// directory).  Returns 0 on success, 2 on input/validation errors, 3 on
/// numerical failures.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace cmx

#endif  // CMX_CLI_HPP
