#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ballspace {

// Exit codes: 0 success / property holds, 1 property fails or witness found
// (an expected negative), 2 input error, 3 internal soundness alarm.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ballspace
