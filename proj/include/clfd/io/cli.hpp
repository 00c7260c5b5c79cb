#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clfd::io {

/// Pipeline entry point. Subcommands: gen-demo, segment, learn, plan,
/// execute, eval, plot. Returns 0 on success, 1 on task failure, 2 on usage
/// errors (reported to err).
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace clfd::io
