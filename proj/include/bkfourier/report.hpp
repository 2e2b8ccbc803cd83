// Copyright 2026 The bkfourier Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Report serialization. Needs the vendored nlohmann/json header.

#ifndef BKFOURIER_REPORT_HPP_
#define BKFOURIER_REPORT_HPP_

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bkfourier/checks.hpp"
#include "json.hpp"

namespace bkf {

using Json = nlohmann::ordered_json;

inline Json to_json(const Record& r, bool timing = true) {
  Json j;
  j["id"] = r.id;
  j["group"] = r.group;
  j["q"] = r.q;
  j["status"] = r.status;
  j["theorem_backed"] = r.theorem_backed;
  j["expected"] = r.expected;
  j["computed"] = r.computed;
  j["class_count"] = r.class_count;
  if (r.witness.empty()) {
    j["witness"] = nullptr;
  } else {
    Json w = Json::object();
    for (const auto& [k, v] : r.witness) w[k] = v;
    j["witness"] = w;
  }
  if (timing) j["wall_ms"] = r.wall_ms;
  return j;
}

inline Json to_json(const Report& rep, bool timing = true) {
  Json j;
  j["version"] = rep.version;
  Json cfg;
  cfg["groups"] = rep.config.groups;
  cfg["q"] = rep.config.q_list;
  cfg["checks"] = rep.config.checks;
  cfg["threads"] = rep.config.threads;
  cfg["matrix_cap"] = rep.config.matrix_cap;
  cfg["format"] = rep.config.format;
  j["config"] = cfg;
  Json recs = Json::array();
  for (const Record& r : rep.records) recs.push_back(to_json(r, timing));
  j["records"] = recs;
  Json s;
  s["records"] = rep.records.size();
  s["pass"] = rep.count("pass");
  s["fail"] = rep.count("fail");
  s["finding"] = rep.count("finding");
  s["theorem_failure"] = rep.theorem_failure();
  Json mod = Json::object();
  for (const auto& [q, m] : rep.moduli) mod[std::to_string(q)] = m;
  s["moduli"] = mod;
  j["summary"] = s;
  return j;
}

inline Report report_from_json(const Json& j) {
  Report rep;
  rep.version = j.at("version").get<std::string>();
  const Json& cfg = j.at("config");
  rep.config.groups = cfg.at("groups").get<std::vector<std::string>>();
  rep.config.q_list = cfg.at("q").get<std::vector<unsigned>>();
  rep.config.checks = cfg.at("checks").get<std::vector<std::string>>();
  rep.config.threads = cfg.at("threads").get<unsigned>();
  rep.config.matrix_cap = cfg.at("matrix_cap").get<std::size_t>();
  rep.config.format = cfg.at("format").get<std::string>();
  for (const Json& jr : j.at("records")) {
    Record r;
    r.id = jr.at("id").get<std::string>();
    r.group = jr.at("group").get<std::string>();
    r.q = jr.at("q").get<unsigned>();
    r.status = jr.at("status").get<std::string>();
    r.theorem_backed = jr.at("theorem_backed").get<bool>();
    r.expected = jr.at("expected").get<std::string>();
    r.computed = jr.at("computed").get<std::string>();
    r.class_count = jr.at("class_count").get<std::size_t>();
    if (!jr.at("witness").is_null()) {
      for (const auto& [k, v] : jr.at("witness").items()) r.witness.push_back({k, v.get<std::string>()});
    }
    if (jr.contains("wall_ms")) r.wall_ms = jr.at("wall_ms").get<double>();
    rep.records.push_back(std::move(r));
  }
  for (const auto& [q, m] : j.at("summary").at("moduli").items()) {
    rep.moduli[static_cast<unsigned>(std::stoul(q))] = m.get<std::string>();
  }
  return rep;
}

inline std::string report_text(const Report& rep) {
  std::ostringstream os;
  os << "bkfourier " << rep.version << "\n";
  for (const Record& r : rep.records) {
    std::string status = r.status;
    for (auto& ch : status) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << std::left << std::setw(8) << status << std::setw(10) << r.group << "q=" << std::setw(3)
       << r.q << ' ' << r.id << ": expected " << r.expected << ", computed " << r.computed;
    if (!r.theorem_backed) os << " [not theorem-backed]";
    os << "\n";
    if (r.status != "pass") {
      for (const auto& [k, v] : r.witness) os << "         " << k << " = " << v << "\n";
    }
  }
  os << "summary: " << rep.records.size() << " records, " << rep.count("pass") << " pass, "
     << rep.count("fail") << " fail, " << rep.count("finding") << " finding\n";
  for (const auto& [q, m] : rep.moduli) os << "field q=" << q << ": " << m << "\n";
  return os.str();
}

inline std::string emit_report(const Report& rep, const std::string& format, bool timing = true) {
  if (format == "json") return to_json(rep, timing).dump(2) + "\n";
  if (format == "text") return report_text(rep);
  throw ConfigError("unknown format '" + format + "'");
}

inline void write_report(const Report& rep, const std::string& format, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << emit_report(rep, format);
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace bkf

#endif  // BKFOURIER_REPORT_HPP_
