#pragma once

#include <string>

#include "probinfo/machine.hpp"

namespace probinfo::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(PROBINFO_FIXTURE_DIR) + "/" + name;
}

inline MachineSpec load_fixture(const std::string& name) {
  return load_machine_file(fixture_path(name), 16);
}

inline BitString bits(const char* s) { return BitString(s); }

}  // namespace probinfo::testing
