#include "tool_common.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "husimi/errors.hpp"

namespace husimi::tools {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw input_error("read failure on file: " + path);
  return buf.str();
}

PhysicalScenario load_scenario_file(const std::string& path) {
  try {
    return load_scenario(read_file(path));
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

TimeGrating load_grating_file(const std::string& path) {
  try {
    return load_grating(read_file(path));
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

void print_input_echo(std::ostream& os, const PhysicalScenario& s, const TimeGrating& g) {
  os << "scenario: " << serialize_scenario(s) << "\n";
  os << "grating: " << serialize_grating(g) << "\n";
}

}  // namespace husimi::tools
