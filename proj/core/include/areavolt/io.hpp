#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "areavolt/powerflow.hpp"
#include "areavolt/reduction.hpp"
#include "areavolt/topology.hpp"

namespace areavolt {

/// Reads a whole file. Throws Error(IoError).
std::string read_text_file(const std::filesystem::path& path);

/// Topology document: arrays `gen_buses`, `load_buses`, `corridor_lines`
/// (objects `{id, from, to}`) and optional `intra_area_lines`.
CorridorTopology parse_topology(std::string_view json_text);
CorridorTopology load_topology(const std::filesystem::path& path);

/// Network document: `buses` (`{id, kind, v_set?, angle_deg?, p?, q?}`, kind
/// one of "slack", "pv", "pq") and `lines` (`{id, from, to, g, b}`, Y = g + jb).
PfNetwork parse_network(std::string_view json_text);
PfNetwork load_network(const std::filesystem::path& path);
std::string network_to_json(const PfNetwork& net);

/// Static line parameters from the `lines` array of a network document.
LineAdmittanceSet parse_line_admittances(std::string_view json_text);
LineAdmittanceSet load_line_admittances(const std::filesystem::path& path);

/// Load-share splits for the error sweep: `{"base_total_p": x?, "splits":
/// [[share per load bus], ...]}`.
struct SplitPlan {
  std::optional<double> base_total_p;
  std::vector<std::vector<double>> splits;
};

SplitPlan parse_splits(std::string_view json_text);
SplitPlan load_splits(const std::filesystem::path& path);

}  // namespace areavolt
