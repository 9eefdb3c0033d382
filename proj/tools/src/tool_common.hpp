#pragma once

#include <iosfwd>
#include <string>

#include "husimi/aperture.hpp"
#include "husimi/scenario.hpp"

namespace husimi::tools {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitValidationFailure = 2;
inline constexpr int kExitNumericFailure = 3;

// Reads a whole file; throws input_error naming the path on failure.
std::string read_file(const std::string& path);

PhysicalScenario load_scenario_file(const std::string& path);
TimeGrating load_grating_file(const std::string& path);

// Every report starts with the full input echo so a report alone suffices
// to rerun the computation.
void print_input_echo(std::ostream& os, const PhysicalScenario& s, const TimeGrating& g);

}  // namespace husimi::tools
