#include "areavolt/frame_csv.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "areavolt/csv.hpp"
#include "areavolt/error.hpp"

namespace areavolt {

namespace {

constexpr std::string_view kTimeColumn = "t_us";

std::optional<double> to_double(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::string format_sig(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace

FrameCsvLayout FrameCsvLayout::bind(std::string_view header, const CorridorTopology& topo) {
  FrameCsvLayout layout;
  std::set<std::pair<std::string, std::string>> seen;  // (name, part)
  bool has_time = false;

  for (auto field : split_fields(header)) {
    if (field == kTimeColumn) {
      if (has_time) throw Error(Errc::TopologyMismatch, "duplicate t_us column");
      has_time = true;
      layout.columns_.push_back({Kind::Time, {}, Part::Magnitude});
      continue;
    }
    const auto first = field.find(':');
    const auto last = field.rfind(':');
    if (first == std::string_view::npos || first == last || first != 1) {
      throw Error(Errc::TopologyMismatch, "unrecognised column '" + std::string(field) + "'");
    }
    const char tag = field.front();
    const std::string id(field.substr(first + 1, last - first - 1));
    const auto part_text = field.substr(last + 1);
    Column column;
    column.id = id;
    if (part_text == "mag") {
      column.part = Part::Magnitude;
    } else if (part_text == "ang") {
      column.part = Part::Angle;
    } else {
      throw Error(Errc::TopologyMismatch, "unrecognised column '" + std::string(field) + "'");
    }
    if (tag == 'V') {
      if (!topo.is_boundary_bus(id)) throw Error(Errc::TopologyMismatch, "unknown bus '" + id + "'");
      column.kind = Kind::Voltage;
    } else if (tag == 'I') {
      bool known = topo.find_corridor_line(id) != nullptr;
      for (const auto& tie : topo.intra_area_lines()) known = known || tie.id == id;
      if (!known) throw Error(Errc::TopologyMismatch, "unknown line '" + id + "'");
      column.kind = Kind::Current;
    } else {
      throw Error(Errc::TopologyMismatch, "unrecognised column '" + std::string(field) + "'");
    }
    if (!seen.emplace(std::string(1, tag) + ":" + id, std::string(part_text)).second) {
      throw Error(Errc::TopologyMismatch, "duplicate column '" + std::string(field) + "'");
    }
    layout.columns_.push_back(std::move(column));
  }

  if (!has_time) throw Error(Errc::TopologyMismatch, "missing t_us column");
  auto require = [&](const std::string& name) {
    for (const char* part : {"mag", "ang"}) {
      if (!seen.contains({name, part})) throw Error(Errc::TopologyMismatch, "missing column '" + name + ":" + part + "'");
    }
  };
  for (const auto& bus : topo.gen_buses()) require("V:" + bus);
  for (const auto& bus : topo.load_buses()) require("V:" + bus);
  for (const auto& line : topo.corridor_lines()) require("I:" + line.id);
  for (const auto& [name, part] : seen) {
    // Every measurement needs both halves.
    if (!seen.contains({name, part == "mag" ? "ang" : "mag"})) {
      throw Error(Errc::TopologyMismatch, "column '" + name + ":" + part + "' has no partner");
    }
  }
  return layout;
}

FrameCsvLayout FrameCsvLayout::canonical(const CorridorTopology& topo) {
  FrameCsvLayout layout;
  layout.columns_.push_back({Kind::Time, {}, Part::Magnitude});
  for (const auto* side : {&topo.gen_buses(), &topo.load_buses()}) {
    for (const auto& bus : *side) {
      layout.columns_.push_back({Kind::Voltage, bus, Part::Magnitude});
      layout.columns_.push_back({Kind::Voltage, bus, Part::Angle});
    }
  }
  for (const auto& line : topo.corridor_lines()) {
    layout.columns_.push_back({Kind::Current, line.id, Part::Magnitude});
    layout.columns_.push_back({Kind::Current, line.id, Part::Angle});
  }
  return layout;
}

std::string FrameCsvLayout::header() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    const auto& col = columns_[c];
    if (col.kind == Kind::Time) {
      out += kTimeColumn;
    } else {
      out += col.kind == Kind::Voltage ? "V:" : "I:";
      out += col.id;
      out += col.part == Part::Magnitude ? ":mag" : ":ang";
    }
  }
  return out;
}

SynchroFrame FrameCsvLayout::parse_row(std::string_view row, std::size_t line_number,
                                       std::optional<std::int64_t> previous_us) const {
  const auto fields = split_fields(row);
  if (fields.size() != columns_.size()) {
    throw MalformedRowError(line_number, std::min(fields.size(), columns_.size()) + 1,
                            "expected " + std::to_string(columns_.size()) + " fields, found " +
                                std::to_string(fields.size()));
  }

  SynchroFrame frame;
  // (kind, id) -> {magnitude, angle}, each optional until both are read.
  std::map<std::pair<Kind, std::string>, std::pair<std::optional<double>, std::optional<double>>> polar;
  bool has_time = false;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const auto& col = columns_[c];
    const auto text = fields[c];
    if (col.kind == Kind::Time) {
      std::int64_t t = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), t);
      if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw MalformedRowError(line_number, c + 1, "bad timestamp '" + std::string(text) + "'");
      }
      frame.timestamp_us = t;
      has_time = true;
      continue;
    }
    auto& slot = polar[{col.kind, col.id}];
    if (text.empty()) continue;
    const auto value = to_double(text);
    if (!value) throw MalformedRowError(line_number, c + 1, "bad number '" + std::string(text) + "'");
    if (col.part == Part::Magnitude) {
      if (*value < 0.0) throw MalformedRowError(line_number, c + 1, "negative magnitude");
      slot.first = *value;
    } else {
      slot.second = *value;
    }
  }
  if (!has_time) throw MalformedRowError(line_number, 1, "missing timestamp");
  if (previous_us && frame.timestamp_us <= *previous_us) {
    throw Error(Errc::NonMonotoneTimestamp, "line " + std::to_string(line_number) + ": t_us " +
                                                std::to_string(frame.timestamp_us) + " after " +
                                                std::to_string(*previous_us));
  }

  for (const auto& [key, value] : polar) {
    const auto& [kind, id] = key;
    const auto& [mag, ang] = value;
    if (!mag && !ang) continue;
    if (!mag || !ang) {
      std::size_t column = 0;
      for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (columns_[c].kind == kind && columns_[c].id == id) column = c + 1;
      }
      throw MalformedRowError(line_number, column, "'" + id + "' has only half of its phasor");
    }
    const Phasor phasor = from_polar_deg(*mag, *ang);
    if (kind == Kind::Voltage) {
      frame.bus_voltages.emplace(id, phasor);
    } else {
      frame.line_currents.emplace(id, phasor);
    }
  }
  return frame;
}

std::string FrameCsvLayout::format_row(const SynchroFrame& frame) const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    const auto& col = columns_[c];
    if (col.kind == Kind::Time) {
      out += std::to_string(frame.timestamp_us);
      continue;
    }
    const auto& source = col.kind == Kind::Voltage ? frame.bus_voltages : frame.line_currents;
    auto it = source.find(col.id);
    if (it == source.end()) continue;
    out += format_sig(col.part == Part::Magnitude ? std::abs(it->second) : angle_deg(it->second));
  }
  return out;
}

SynchroFrame parse_frame_csv(std::string_view row, const CorridorTopology& topo) {
  return FrameCsvLayout::canonical(topo).parse_row(row, 1);
}

}  // namespace areavolt
