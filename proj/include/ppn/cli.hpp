#pragma once

#include <ostream>

namespace ppn {

/// Command-line entry point. Returns 0 on success, 1 on usage errors and 2
/// on numerical, model or I/O errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ppn
