#pragma once

#include <string>

#include "workflow.hpp"

namespace uds {

/// Parses the supported DAX subset: `job` elements (id, runtime, nested
/// `uses` file declarations) plus `child`/`parent` dependency elements.
/// Job runtimes are seconds on the slowest machine, so demands become
/// runtime * slowest_mips; file sizes are bytes and become megabits.
WorkflowGraph parse_dax(const std::string& xml_text, double slowest_mips);

WorkflowGraph load_dax_file(const std::string& path, double slowest_mips);

/// Inverse of parse_dax for the same subset (used for round-tripping).
std::string serialize_dax(const WorkflowGraph& g, double slowest_mips);

}  // namespace uds
