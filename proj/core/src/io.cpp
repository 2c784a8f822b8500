#include "areavolt/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "areavolt/error.hpp"

namespace areavolt {

using nlohmann::json;

namespace {

json parse_document(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string(what) + ": " + e.what());
  }
}

template <class Fn>
auto with_context(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string(what) + ": " + e.what());
  }
}

std::vector<Line> read_lines(const json& doc, const char* key) {
  std::vector<Line> lines;
  if (!doc.contains(key)) return lines;
  for (const auto& item : doc.at(key)) {
    lines.push_back({item.at("id").get<std::string>(), item.at("from").get<std::string>(),
                     item.at("to").get<std::string>()});
  }
  return lines;
}

BusKind parse_kind(std::string kind) {
  for (auto& c : kind) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (kind == "slack") return BusKind::Slack;
  if (kind == "pv") return BusKind::PV;
  if (kind == "pq") return BusKind::PQ;
  throw Error(Errc::ParseError, "unknown bus kind '" + kind + "'");
}

const char* kind_name(BusKind kind) {
  switch (kind) {
    case BusKind::Slack: return "slack";
    case BusKind::PV: return "pv";
    case BusKind::PQ: return "pq";
  }
  return "pq";
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CorridorTopology parse_topology(std::string_view json_text) {
  const json doc = parse_document(json_text, "topology");
  return with_context("topology", [&] {
    return CorridorTopology::build(doc.at("gen_buses").get<std::vector<std::string>>(),
                                   doc.at("load_buses").get<std::vector<std::string>>(),
                                   read_lines(doc, "corridor_lines"), read_lines(doc, "intra_area_lines"));
  });
}

CorridorTopology load_topology(const std::filesystem::path& path) { return parse_topology(read_text_file(path)); }

PfNetwork parse_network(std::string_view json_text) {
  const json doc = parse_document(json_text, "network");
  PfNetwork net = with_context("network", [&] {
    PfNetwork out;
    for (const auto& item : doc.at("buses")) {
      PfBus bus;
      bus.id = item.at("id").get<std::string>();
      bus.kind = parse_kind(item.at("kind").get<std::string>());
      bus.v_set = item.value("v_set", 1.0);
      bus.angle_deg = item.value("angle_deg", 0.0);
      bus.p = item.value("p", 0.0);
      bus.q = item.value("q", 0.0);
      out.buses.push_back(std::move(bus));
    }
    for (const auto& item : doc.at("lines")) {
      out.lines.push_back({item.at("id").get<std::string>(), item.at("from").get<std::string>(),
                           item.at("to").get<std::string>(),
                           Phasor(item.at("g").get<double>(), item.at("b").get<double>())});
    }
    return out;
  });
  net.validate();
  return net;
}

PfNetwork load_network(const std::filesystem::path& path) { return parse_network(read_text_file(path)); }

std::string network_to_json(const PfNetwork& net) {
  json doc;
  doc["buses"] = json::array();
  for (const auto& bus : net.buses) {
    json item{{"id", bus.id}, {"kind", kind_name(bus.kind)}};
    if (bus.kind != BusKind::PQ) item["v_set"] = bus.v_set;
    if (bus.kind == BusKind::Slack) item["angle_deg"] = bus.angle_deg;
    if (bus.kind != BusKind::Slack) item["p"] = bus.p;
    if (bus.kind == BusKind::PQ) item["q"] = bus.q;
    doc["buses"].push_back(std::move(item));
  }
  doc["lines"] = json::array();
  for (const auto& line : net.lines) {
    doc["lines"].push_back(
        {{"id", line.id}, {"from", line.from}, {"to", line.to}, {"g", line.y.real()}, {"b", line.y.imag()}});
  }
  return doc.dump(2) + "\n";
}

LineAdmittanceSet parse_line_admittances(std::string_view json_text) {
  const json doc = parse_document(json_text, "line file");
  return with_context("line file", [&] {
    LineAdmittanceSet out;
    for (const auto& item : doc.at("lines")) {
      const Phasor y(item.at("g").get<double>(), item.at("b").get<double>());
      if (!is_finite(y) || std::abs(y) == 0.0) {
        throw Error(Errc::ParseError, "line '" + item.at("id").get<std::string>() + "' has zero admittance");
      }
      out.emplace(item.at("id").get<std::string>(), y);
    }
    return out;
  });
}

LineAdmittanceSet load_line_admittances(const std::filesystem::path& path) {
  return parse_line_admittances(read_text_file(path));
}

SplitPlan parse_splits(std::string_view json_text) {
  const json doc = parse_document(json_text, "splits");
  return with_context("splits", [&] {
    SplitPlan plan;
    if (doc.contains("base_total_p")) plan.base_total_p = doc.at("base_total_p").get<double>();
    plan.splits = doc.at("splits").get<std::vector<std::vector<double>>>();
    return plan;
  });
}

SplitPlan load_splits(const std::filesystem::path& path) { return parse_splits(read_text_file(path)); }

}  // namespace areavolt
