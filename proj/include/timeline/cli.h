#ifndef TIMELINE_CLI_H_
#define TIMELINE_CLI_H_

#include <ostream>

namespace timeline {

// Entry point of the `timeline` tool. Reports go to `out`, diagnostics to
// `err`. Returns 0 on success, 1 for schema or validation failures, 2 for
// usage and I/O errors.
int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace timeline

#endif  // TIMELINE_CLI_H_
