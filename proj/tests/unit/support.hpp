#pragma once

#include "hornpre/chc.hpp"

#include <fstream>
#include <sstream>
#include <string>

inline hornpre::Program load_data(const std::string &name) {
  std::ifstream in(std::string(HORNPRE_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return hornpre::parse_program(ss.str());
}
