// Copyright 2026 The dynfl Authors.
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

// Instance and solution files. Both are JSON documents; see
// docs/file-formats.md and schemas/ for the layout.

#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "dynfl/model.hpp"
#include "json.hpp"

namespace dynfl {

inline constexpr int kFormatVersion = 1;

class ParseError : public Error {
 public:
  ParseError(const std::string& source, const std::string& path,
             const std::string& message)
      : Error(source + ": " + (path.empty() ? "" : path + ": ") + message),
        path_(path) {}

  // JSON path of the offending field, e.g. "distances[1][0][2]".
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

namespace io_detail {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw ParseError(source_, path, msg);
  }

  const json& field(const json& obj, const std::string& key) const {
    if (!obj.is_object()) fail("", "document must be a JSON object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(key, "missing field");
    return *it;
  }

  long long integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long long>();
  }

  double number(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
  }

  const json& array(const json& v, const std::string& path,
                    std::size_t expected_size) const {
    if (!v.is_array()) fail(path, "expected an array");
    if (v.size() != expected_size) {
      fail(path, "expected " + std::to_string(expected_size) +
                     " entries, found " + std::to_string(v.size()));
    }
    return v;
  }

  OpeningMode mode(const json& v, const std::string& path) const {
    if (v == "fixed") return OpeningMode::kFixed;
    if (v == "hourly") return OpeningMode::kHourly;
    fail(path, "mode must be \"fixed\" or \"hourly\"");
  }

  std::vector<int> id_list(const json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected an array");
    std::vector<int> ids;
    for (std::size_t k = 0; k < v.size(); ++k)
      ids.push_back(static_cast<int>(integer(v[k], path + "[" + std::to_string(k) + "]")));
    return ids;
  }

 private:
  std::string source_;
};

inline std::string index_path(const std::string& base, std::size_t a) {
  return base + "[" + std::to_string(a) + "]";
}

inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, "", std::string("malformed JSON: ") + e.what());
  }
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "", "cannot open file");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw Error(path.string() + ": write failed");
}

}  // namespace io_detail

inline nlohmann::json instance_to_json(const Instance& inst) {
  using nlohmann::json;
  json d = json::array();
  for (int t = 0; t < inst.horizon(); ++t) {
    json snapshot = json::array();
    for (int i = 0; i < inst.facilities(); ++i) {
      json row = json::array();
      for (int j = 0; j < inst.clients(); ++j) row.push_back(inst.distance(t, i, j));
      snapshot.push_back(std::move(row));
    }
    d.push_back(std::move(snapshot));
  }
  return json{{"version", kFormatVersion},
              {"n", inst.clients()},
              {"m", inst.facilities()},
              {"T", inst.horizon()},
              {"f", inst.opening_cost()},
              {"g", inst.switching_cost()},
              {"mode", std::string(to_string(inst.mode()))},
              {"infinity_sentinel", inst.infinity_sentinel()},
              {"distances", std::move(d)}};
}

inline Instance instance_from_json(const nlohmann::json& doc,
                                   const std::string& source = "<instance>") {
  io_detail::Reader r(source);
  if (r.integer(r.field(doc, "version"), "version") != kFormatVersion)
    r.fail("version", "unsupported format version");
  auto count = [&](const char* key) {
    long long v = r.integer(r.field(doc, key), key);
    if (v < 1) r.fail(key, "must be >= 1");
    if (v > 1'000'000) r.fail(key, "unreasonably large");
    return static_cast<int>(v);
  };
  const int n = count("n");
  const int m = count("m");
  const int T = count("T");
  const double f = r.number(r.field(doc, "f"), "f");
  const double g = r.number(r.field(doc, "g"), "g");
  if (f < 0) r.fail("f", "must be >= 0");
  if (g < 0) r.fail("g", "must be >= 0");
  const OpeningMode mode = r.mode(r.field(doc, "mode"), "mode");
  const double sentinel =
      r.number(r.field(doc, "infinity_sentinel"), "infinity_sentinel");

  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(T) * m * n);
  const auto& dt = r.array(r.field(doc, "distances"), "distances", T);
  for (int t = 0; t < T; ++t) {
    std::string pt = io_detail::index_path("distances", t);
    const auto& di = r.array(dt[t], pt, m);
    for (int i = 0; i < m; ++i) {
      std::string pi = io_detail::index_path(pt, i);
      const auto& dj = r.array(di[i], pi, n);
      for (int j = 0; j < n; ++j) {
        std::string pj = io_detail::index_path(pi, j);
        double v = r.number(dj[j], pj);
        if (v < 0) r.fail(pj, "negative distance");
        if (v > sentinel) r.fail(pj, "distance exceeds infinity_sentinel");
        d.push_back(v);
      }
    }
  }
  try {
    return Instance(n, m, T, f, g, mode, sentinel, std::move(d));
  } catch (const InvalidInstance& e) {
    throw ParseError(source, "", e.what());
  }
}

inline nlohmann::json solution_to_json(const Solution& s) {
  using nlohmann::json;
  json open = s.mode == OpeningMode::kFixed ? json(s.open.front()) : json(s.open);
  return json{{"mode", std::string(to_string(s.mode))},
              {"open", std::move(open)},
              {"assignment", s.assignment}};
}

inline Solution solution_from_json(const nlohmann::json& doc,
                                   const std::string& source = "<solution>") {
  io_detail::Reader r(source);
  Solution s;
  s.mode = r.mode(r.field(doc, "mode"), "mode");
  const auto& open = r.field(doc, "open");
  if (s.mode == OpeningMode::kFixed) {
    s.open.push_back(r.id_list(open, "open"));
  } else {
    if (!open.is_array()) r.fail("open", "expected a list of lists");
    for (std::size_t t = 0; t < open.size(); ++t)
      s.open.push_back(r.id_list(open[t], io_detail::index_path("open", t)));
  }
  const auto& assignment = r.field(doc, "assignment");
  if (!assignment.is_array()) r.fail("assignment", "expected an array");
  for (std::size_t t = 0; t < assignment.size(); ++t)
    s.assignment.push_back(
        r.id_list(assignment[t], io_detail::index_path("assignment", t)));
  return s;
}

inline std::string dump_json(const nlohmann::json& doc) { return doc.dump() + "\n"; }

inline Instance parse_instance(const std::string& text,
                               const std::string& source = "<instance>") {
  return instance_from_json(io_detail::parse_text(text, source), source);
}

inline Solution parse_solution(const std::string& text,
                               const std::string& source = "<solution>") {
  return solution_from_json(io_detail::parse_text(text, source), source);
}

inline Instance read_instance(const std::filesystem::path& path) {
  return parse_instance(io_detail::slurp(path), path.string());
}

inline void write_instance(const std::filesystem::path& path, const Instance& inst) {
  io_detail::spit(path, dump_json(instance_to_json(inst)));
}

inline Solution read_solution(const std::filesystem::path& path) {
  return parse_solution(io_detail::slurp(path), path.string());
}

inline void write_solution(const std::filesystem::path& path, const Solution& s) {
  io_detail::spit(path, dump_json(solution_to_json(s)));
}

}  // namespace dynfl
