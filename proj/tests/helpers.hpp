#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

inline std::string fixture_path(const std::string& name) {
  return std::string(RTMML_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing fixture ", name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}
