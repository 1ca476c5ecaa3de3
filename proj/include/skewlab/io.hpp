#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "skewlab/algebra.hpp"
#include "skewlab/error.hpp"
#include "skewlab/lie.hpp"
#include "skewlab/parse.hpp"
#include "skewlab/pbw.hpp"

namespace skewlab {

using json = nlohmann::json;

// ---- algebra files ----------------------------------------------------------
// {"p":3, "base_vars":["s","t"], "ext_vars":[], "dim":9, "unit":0,
//  "table":[[i,j,k,"coeff"],...]} with an optional "labels" array.

inline json algebra_to_json(const StructureTensor& A) {
  json j;
  j["p"] = A.spec()->p();
  j["base_vars"] = A.spec()->base_vars();
  j["ext_vars"] = A.spec()->ext_vars();
  j["dim"] = A.dim();
  j["unit"] = A.unit_index();
  json table = json::array();
  for (const auto& e : A.entries()) table.push_back({e.i, e.j, e.k, e.c.to_string()});
  j["table"] = std::move(table);
  j["labels"] = A.labels();
  return j;
}

inline StructureTensor algebra_from_json(const json& j) {
  try {
    require(j.contains("p") && j.contains("dim") && j.contains("unit") && j.contains("table"),
            errc::parse_error, "algebra file needs p, dim, unit and table");
    auto spec = std::make_shared<FieldSpec>(
        j.at("p").get<fp_t>(), j.value("base_vars", std::vector<std::string>{}),
        j.value("ext_vars", std::vector<std::string>{}));
    std::vector<StructureTensor::Entry> entries;
    for (const auto& row : j.at("table")) {
      require(row.is_array() && row.size() == 4, errc::parse_error,
              "table entries are [i, j, k, coeff]");
      entries.push_back(StructureTensor::Entry{row[0].get<std::size_t>(), row[1].get<std::size_t>(),
                                               row[2].get<std::size_t>(),
                                               parse_scalar(spec, row[3].get<std::string>())});
    }
    std::vector<std::string> labels = j.value("labels", std::vector<std::string>{});
    return StructureTensor(spec, j.at("dim").get<std::size_t>(), j.at("unit").get<std::size_t>(),
                           entries, labels);
  } catch (const json::exception& e) {
    raise(errc::parse_error, std::string("malformed algebra file: ") + e.what());
  }
}

// ---- lie files ----------------------------------------------------------------
// {"p":3, "dim":5, "bracket":[[i,j,k,"coeff"],...], "pmap":[[i,"c0,c1,..."],...]?}
// with optional "embedding": ["c0,c1,...", ...] rows into a separate ambient.

struct LieFile {
  LiePresentation algebra;
  std::vector<FpVec> embedding;  // empty when none declared
};

namespace detail {
inline FpVec parse_fp_csv(const std::string& s, std::size_t expected, fp_t p) {
  FpVec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(fp_of(std::stoll(item), p));
    } catch (const std::exception&) {
      raise(errc::parse_error, "bad coordinate '" + item + "'");
    }
  }
  require(expected == 0 || out.size() == expected, errc::parse_error,
          "coordinate string has the wrong length");
  return out;
}

inline std::string fp_csv(const FpVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}
}  // namespace detail

inline json lie_to_json(const LiePresentation& L, const std::vector<FpVec>& embedding = {}) {
  json j;
  j["p"] = L.p();
  j["dim"] = L.dim();
  json bracket = json::array();
  for (const auto& e : L.entries()) bracket.push_back({e.i, e.j, e.k, std::to_string(e.c)});
  j["bracket"] = std::move(bracket);
  if (L.has_pmap()) {
    json pm = json::array();
    for (std::size_t i = 0; i < L.dim(); ++i) pm.push_back({i, detail::fp_csv(L.pmap()[i])});
    j["pmap"] = std::move(pm);
  }
  if (!embedding.empty()) {
    json emb = json::array();
    for (const auto& row : embedding) emb.push_back(detail::fp_csv(row));
    j["embedding"] = std::move(emb);
  }
  return j;
}

inline LieFile lie_from_json(const json& j) {
  try {
    require(j.contains("p") && j.contains("dim") && j.contains("bracket"), errc::parse_error,
            "lie file needs p, dim and bracket");
    fp_t p = j.at("p").get<fp_t>();
    std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<LiePresentation::Entry> entries;
    for (const auto& row : j.at("bracket")) {
      require(row.is_array() && row.size() == 4, errc::parse_error,
              "bracket entries are [i, j, k, coeff]");
      long long c = 0;
      if (row[3].is_string()) {
        try {
          c = std::stoll(row[3].get<std::string>());
        } catch (const std::exception&) {
          raise(errc::parse_error, "bad bracket coefficient");
        }
      } else {
        c = row[3].get<long long>();
      }
      entries.push_back(LiePresentation::Entry{row[0].get<std::size_t>(), row[1].get<std::size_t>(),
                                               row[2].get<std::size_t>(), fp_of(c, p)});
    }
    std::optional<std::vector<FpVec>> pmap;
    if (j.contains("pmap")) {
      std::vector<FpVec> pm(dim, FpVec(dim, 0));
      for (const auto& row : j.at("pmap")) {
        require(row.is_array() && row.size() == 2, errc::parse_error,
                "pmap entries are [i, \"c0,c1,...\"]");
        std::size_t i = row[0].get<std::size_t>();
        require(i < dim, errc::parse_error, "pmap index out of range");
        pm[i] = detail::parse_fp_csv(row[1].get<std::string>(), dim, p);
      }
      pmap = std::move(pm);
    }
    LieFile out{LiePresentation(p, dim, entries, pmap), {}};
    if (j.contains("embedding"))
      for (const auto& row : j.at("embedding"))
        out.embedding.push_back(detail::parse_fp_csv(row.get<std::string>(), 0, p));
    return out;
  } catch (const json::exception& e) {
    raise(errc::parse_error, std::string("malformed lie file: ") + e.what());
  }
}

// embedding rows have ambient length, unknown while parsing; re-validate here
inline std::vector<FpVec> lie_embedding_from_json(const json& j, std::size_t ambient_dim, fp_t p) {
  std::vector<FpVec> rows;
  require(j.contains("embedding"), errc::parse_error, "lie file declares no embedding");
  for (const auto& row : j.at("embedding"))
    rows.push_back(detail::parse_fp_csv(row.get<std::string>(), ambient_dim, p));
  return rows;
}

// ---- generator files ----------------------------------------------------------
// {"schema":1, "kind":"toral"|"inseparable"|"subspace", "exponent":r?,
//  "gens":["x + u^3 - u", ...]}

struct GensFile {
  std::string kind;
  std::uint32_t exponent = 0;
  std::vector<std::string> exprs;

  std::vector<AlgElement> parse_against(const StructureTensor& A) const {
    std::vector<AlgElement> out;
    for (const auto& e : exprs) out.push_back(parse_element(A, e));
    return out;
  }
};

inline GensFile gens_from_json(const json& j) {
  try {
    GensFile out;
    out.kind = j.value("kind", std::string("subspace"));
    require(out.kind == "toral" || out.kind == "inseparable" || out.kind == "subspace",
            errc::parse_error, "kind must be toral, inseparable or subspace");
    out.exponent = j.value("exponent", 0u);
    require(j.contains("gens") && j.at("gens").is_array(), errc::parse_error,
            "gens file needs a gens array");
    for (const auto& g : j.at("gens")) out.exprs.push_back(g.get<std::string>());
    require(!out.exprs.empty(), errc::invalid_parameters, "empty generator list");
    return out;
  } catch (const json::exception& e) {
    raise(errc::parse_error, std::string("malformed gens file: ") + e.what());
  }
}

inline json gens_to_json(const GensFile& g) {
  json j;
  j["schema"] = 1;
  j["kind"] = g.kind;
  if (g.kind == "inseparable") j["exponent"] = g.exponent;
  j["gens"] = g.exprs;
  return j;
}

// ---- file helpers ---------------------------------------------------------------

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::parse_error, "cannot open '" + path + "'");
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    raise(errc::parse_error, "invalid JSON in '" + path + "': " + e.what());
  }
}

inline void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  require(out.good(), errc::invalid_parameters, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

inline json uelement_to_json(const UElement& u) {
  json arr = json::array();
  for (const auto& [mono, coeff] : u_serialize(u)) arr.push_back({mono, coeff});
  return arr;
}

// ---- run reports ------------------------------------------------------------------

/// Named verdicts with provenance; the JSON schema is versioned and reports
/// are byte-identical across runs unless timing capture is requested.
class RunReport {
 public:
  RunReport(std::string command, json inputs) : command_(std::move(command)), inputs_(std::move(inputs)) {}

  void add_verdict(const std::string& name, const std::string& instance, bool pass,
                   json value = json()) {
    json v;
    v["name"] = name;
    v["instance"] = instance;
    v["pass"] = pass;
    if (!value.is_null()) v["value"] = std::move(value);
    verdicts_.push_back(std::move(v));
    all_pass_ = all_pass_ && pass;
  }
  void add_data(const std::string& key, json value) { data_[key] = std::move(value); }
  void set_timing(const std::string& key, double ms) { timings_[key] = ms; }

  bool all_pass() const { return all_pass_; }

  json to_json(bool with_timings = false) const {
    json j;
    j["schema"] = 1;
    j["command"] = command_;
    j["inputs"] = inputs_;
    for (auto it = data_.begin(); it != data_.end(); ++it) j[it.key()] = it.value();
    j["verdicts"] = verdicts_;
    if (with_timings) j["timings"] = timings_;
    return j;
  }

 private:
  std::string command_;
  json inputs_;
  json data_ = json::object();
  json verdicts_ = json::array();
  json timings_ = json::object();
  bool all_pass_ = true;
};

}  // namespace skewlab
