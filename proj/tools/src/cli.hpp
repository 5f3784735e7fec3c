#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nbe::cli {

enum Exit : int {
  kOk = 0,
  kNotEqual = 1,
  kTypeError = 2,  // also bad flags, unreadable input, DomainTooLarge
  kParseError = 3,
  kInternal = 4,
};

struct Io {
  std::istream& in;  // for `-`
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

// args excludes the program name.
int run(const std::vector<std::string>& args, Io io);

// NBE_COLOR: auto (default; colour when stderr is a terminal), always, never.
bool color_from_env();

}  // namespace nbe::cli
