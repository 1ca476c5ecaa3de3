// Command-line front end: exact checks on structure-constant algebras, torus
// and Galois reports, generic-specialization verdicts and p-envelope runs,
// all emitted as versioned JSON reports.
//
// Exit codes: 0 all verdicts pass, 1 verdict failure, 2 malformed input.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skewlab/corpus.hpp"
#include "skewlab/io.hpp"
#include "skewlab/specialize.hpp"
#include "skewlab/torus.hpp"

namespace {

using namespace skewlab;

int classify_error(const error& e) {
  switch (e.code()) {
    case errc::parse_error:
    case errc::invalid_parameters:
    case errc::not_restricted:
    case errc::not_a_subalgebra:
    case errc::not_commutative:
    case errc::not_a_field:
    case errc::dimension_mismatch:
      return 2;
    default:
      return 1;
  }
}

struct OutputOptions {
  std::string out_path;
  bool timings = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

int finish(RunReport& report, const OutputOptions& opts) {
  if (opts.timings) {
    auto elapsed = std::chrono::steady_clock::now() - opts.start;
    report.set_timing("total_ms",
                      std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() / 1000.0);
  }
  json j = report.to_json(opts.timings);
  if (opts.out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    save_json(opts.out_path, j);
  return report.all_pass() ? 0 : 1;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Torus torus_from_option(const StructureTensor& A, const std::string& spec) {
  std::vector<AlgElement> gens;
  for (const auto& expr : split_commas(spec))
    if (!expr.empty()) gens.push_back(parse_element(A, expr));
  return make_torus(A, gens);
}

json weights_json(const WeightDecomposition& wd) {
  json arr = json::array();
  for (std::size_t i = 0; i < wd.weights.size(); ++i) {
    json w;
    w["weight"] = wd.weights[i].to_string();
    w["dim"] = wd.spaces[i].dim();
    arr.push_back(std::move(w));
  }
  return arr;
}

json maximality_json(const MaximalityReport& r) {
  json j;
  j["n_equals_rank"] = r.n_equals_rank;
  j["zt_maximal"] = r.zt_maximal;
  j["d0_maximal"] = r.d0_maximal;
  j["d0_equals_zt"] = r.d0_equals_zt;
  j["d0_commutative"] = r.d0_commutative;
  j["weight_count_pn"] = r.weight_count;
  return j;
}

// ---- check ------------------------------------------------------------------

int run_check(const std::string& target, const std::string& file,
              const std::vector<std::uint64_t>& zassenhaus_args, const std::string& torus_spec,
              const OutputOptions& opts) {
  json inputs = json::object();
  if (!file.empty()) inputs["file"] = file;
  if (!torus_spec.empty()) inputs["torus"] = torus_spec;

  if (target == "jacobi") {
    RunReport report("check jacobi", inputs);
    LiePresentation L = [&] {
      if (!zassenhaus_args.empty()) {
        require(zassenhaus_args.size() == 2, errc::invalid_parameters,
                "--zassenhaus takes p and m");
        report.add_data("instance", "zassenhaus(" + std::to_string(zassenhaus_args[0]) + "," +
                                        std::to_string(zassenhaus_args[1]) + ")");
        return zassenhaus(zassenhaus_args[0], static_cast<std::uint32_t>(zassenhaus_args[1]));
      }
      require(!file.empty(), errc::invalid_parameters, "need --file or --zassenhaus");
      report.add_data("instance", file);
      return lie_from_json(load_json(file)).algebra;
    }();
    JacobiResult jr = jacobi_check(L);
    json value;
    value["dim"] = L.dim();
    if (!jr.holds) value["witness"] = {jr.i, jr.j, jr.k};
    report.add_verdict("jacobi", !file.empty() ? file : "builtin", jr.holds, value);
    return finish(report, opts);
  }

  require(!file.empty(), errc::invalid_parameters, "need --file");
  StructureTensor A = algebra_from_json(load_json(file));
  require(!torus_spec.empty(), errc::invalid_parameters, "need --torus");
  Torus T = torus_from_option(A, torus_spec);

  if (target == "walrus") {
    RunReport report("check walrus", inputs);
    MaximalityReport mr = maximality_report(A, T);
    report.add_data("conditions", maximality_json(mr));
    report.add_verdict("maximality_equivalent", file, mr.all_equal(), maximality_json(mr));
    return finish(report, opts);
  }

  if (target == "torus") {
    RunReport report("torus-report", inputs);
    WeightDecomposition wd = weight_decomposition(A, T);
    report.add_data("rank", T.rank);
    report.add_data("weights", weights_json(wd));

    GaloisData G = galois_from_torus(A, T);
    report.add_data("subfield_dim", G.subfield.dim());
    json galois = json::array();
    for (const auto& g : G.generators) {
      json entry;
      entry["weight"] = g.weight.to_string();
      json rows = json::array();
      for (const auto& row : g.automorphism.rows) {
        json r = json::array();
        for (const auto& c : row) r.push_back(c.to_string());
        rows.push_back(std::move(r));
      }
      entry["automorphism"] = std::move(rows);
      galois.push_back(std::move(entry));
    }
    report.add_data("galois", std::move(galois));

    std::size_t expected = 1;
    for (std::size_t i = 0; i < T.rank; ++i) expected *= static_cast<std::size_t>(A.spec()->p());
    report.add_verdict("weight_count", file, wd.weights.size() == expected,
                       json(wd.weights.size()));
    report.add_verdict("weight_grading", file, weight_grading_check(A, wd));
    report.add_verdict("galois_order", file, G.generators.size() == expected,
                       json(G.generators.size()));
    MaximalityReport mr = maximality_report(A, T);
    report.add_data("conditions", maximality_json(mr));
    report.add_verdict("maximality_equivalent", file, mr.all_equal());
    return finish(report, opts);
  }

  if (target == "galois-roundtrip") {
    RunReport report("check galois-roundtrip", inputs);
    GaloisData G = galois_from_torus(A, T);
    std::size_t expected = 1;
    for (std::size_t i = 0; i < T.rank; ++i) expected *= static_cast<std::size_t>(A.spec()->p());
    report.add_verdict("galois_order", file, G.generators.size() == expected,
                       json(G.generators.size()));
    Torus back = artin_schreier_from_galois(A, G.subfield, G.group());
    report.add_verdict("roundtrip_rank", file, back.rank == T.rank, json(back.rank));
    bool toral_ok = true;
    for (std::size_t i = 1; i < back.toral_basis.size(); ++i)
      toral_ok = toral_ok && is_toral(A, back.toral_basis[i]).toral;
    report.add_verdict("recovered_toral", file, toral_ok);
    std::vector<AlgElement> gens(back.toral_basis.begin() + 1, back.toral_basis.end());
    bool same = gens.empty() ? G.subfield.dim() == 1
                             : generate_subfield(A, gens).space == G.subfield;
    report.add_verdict("roundtrip_subfield", file, same);
    return finish(report, opts);
  }

  raise(errc::invalid_parameters, "unknown check target '" + target + "'");
}

// ---- specialize ----------------------------------------------------------------

json point_json(const StructureTensor& A, const EvalPoint& lambda, const ReductionPointReport& r) {
  json pj;
  json lj;
  for (std::size_t i = 0; i < A.spec()->next(); ++i)
    lj[A.spec()->ext_vars()[i]] = lambda.value(i).to_string();
  pj["lambda"] = std::move(lj);
  pj["cert_value"] = r.cert_value.to_string();
  pj["dim"] = r.dim;
  pj["preserved"] = r.preserved;
  pj["mult_closed"] = r.mult_closed;
  pj["subfield"] = r.is_subfield;
  pj["maximal"] = r.maximal;
  if (r.toral) {
    pj["c_value"] = r.toral->c_value.to_string();
    json taus = json::array();
    for (bool b : r.toral->tau_toral) taus.push_back(b);
    pj["toral"] = std::move(taus);
  }
  if (r.galois) {
    if (r.galois->applicable && r.galois->roots_distinct && r.galois->roots_in_specialized &&
        r.galois->coeffs_in_Z && r.galois->splitting_field)
      pj["galois"] = r.galois->group_name;
    pj["galois_applicable"] = r.galois->applicable;
    pj["separable"] = r.galois->roots_distinct;
    pj["splits"] = r.galois->roots_in_specialized;
  }
  if (r.insep) {
    pj["exponent"] = r.insep->exponent;
    pj["powers_in_centre"] = r.insep->powers_in_Z;
  }
  return pj;
}

int run_specialize(const std::string& algebra_file, const std::string& gens_file,
                   std::uint64_t seeds, std::uint64_t seed_base, std::uint32_t height,
                   const std::vector<std::string>& explicit_points, const OutputOptions& opts) {
  StructureTensor A = algebra_from_json(load_json(algebra_file));
  GensFile gf = gens_from_json(load_json(gens_file));
  std::vector<AlgElement> gens = gf.parse_against(A);

  SubfieldKind kind = gf.kind == "toral"
                          ? SubfieldKind::toral
                          : (gf.kind == "inseparable" ? SubfieldKind::inseparable
                                                      : SubfieldKind::subspace);
  ReductionSetup setup = prepare_reduction(A, gens, kind, gf.exponent);

  json inputs = json::object();
  inputs["algebra"] = algebra_file;
  inputs["gens"] = gens_file;
  inputs["kind"] = gf.kind;
  inputs["seeds"] = seeds;
  inputs["seed"] = seed_base;
  inputs["height"] = height;
  RunReport report("specialize", inputs);
  report.add_data("dimension", setup.dim);
  report.add_data("certificate", setup.cert.poly.to_string());
  report.add_data("clearer", setup.clearer.to_string());

  std::vector<EvalPoint> points;
  for (const auto& spec_str : explicit_points) {
    // "u=expr" or "u=expr;v=expr"
    std::vector<Scalar> values(A.spec()->next(), Scalar::zero(A.spec()));
    std::vector<bool> seen(A.spec()->next(), false);
    std::stringstream ss(spec_str);
    std::string assign;
    while (std::getline(ss, assign, ';')) {
      auto eq = assign.find('=');
      require(eq != std::string::npos, errc::invalid_parameters,
              "--point expects var=expression");
      std::string var = assign.substr(0, eq);
      std::size_t idx = A.spec()->var_index(var);
      require(idx != FieldSpec::npos && A.spec()->is_ext(idx), errc::invalid_parameters,
              "'" + var + "' is not an ext variable");
      std::size_t e = idx - A.spec()->nbase();
      values[e] = parse_scalar(A.spec(), assign.substr(eq + 1));
      seen[e] = true;
    }
    for (bool s : seen)
      require(s, errc::invalid_parameters, "--point must assign every ext variable");
    points.emplace_back(A.spec(), values);
  }
  for (std::uint64_t s = 0; s < seeds; ++s)
    points.push_back(sample_point(A.spec(), seed_base + s, height));

  bool cert_sound = true, toral_transfer = true, galois_transfer = true;
  bool powers_always = true, exponent_bound = true, exponent_generic = true;
  json pts = json::array();
  for (const auto& lambda : points) {
    ReductionPointReport r = verify_reduction_at(setup, lambda);
    if (r.cert_nonzero && !r.preserved) cert_sound = false;
    if (r.toral && r.toral->c_nonzero && !r.toral->all_toral) toral_transfer = false;
    if (r.galois && r.galois->applicable &&
        !(r.galois->roots_distinct && r.galois->roots_in_specialized && r.galois->coeffs_in_Z &&
          r.galois->splitting_field))
      galois_transfer = false;
    if (r.insep) {
      if (!r.insep->powers_in_Z) powers_always = false;
      if (!r.insep->exponent_le_claimed) exponent_bound = false;
      if (!r.insep->exponent_matches) exponent_generic = false;
    }
    pts.push_back(point_json(A, lambda, r));
  }
  report.add_data("points", std::move(pts));

  report.add_verdict("certificate_soundness", gens_file, cert_sound);
  if (setup.toral) {
    report.add_verdict("torality_transfer", gens_file, toral_transfer);
    report.add_verdict("galois_transfer", gens_file, galois_transfer);
  }
  if (setup.insep) {
    report.add_verdict("powers_in_centre", gens_file, powers_always);
    report.add_verdict("exponent_bound", gens_file, exponent_bound);
    report.add_verdict("exponent_generic", gens_file, exponent_generic);
  }
  return finish(report, opts);
}

// ---- envelope ---------------------------------------------------------------------

int run_envelope(const std::string& lie_file, const std::string& ambient_file,
                 std::uint32_t degree, const OutputOptions& opts) {
  json lj = load_json(lie_file);
  LieFile lf = lie_from_json(lj);
  LieFile ambient = lie_from_json(load_json(ambient_file));
  require(ambient.algebra.has_pmap(), errc::not_restricted, "ambient file carries no pmap");
  if (degree == 0) degree = static_cast<std::uint32_t>(ambient.algebra.p()) + 1;

  std::vector<FpVec> embedding;
  if (lj.contains("embedding")) {
    embedding = lie_embedding_from_json(lj, ambient.algebra.dim(), ambient.algebra.p());
  } else {
    require(lf.algebra.dim() == ambient.algebra.dim(), errc::invalid_parameters,
            "no embedding given and dimensions differ");
    for (std::size_t i = 0; i < lf.algebra.dim(); ++i)
      embedding.push_back(ambient.algebra.basis_vector(i));
  }
  require(embedding.size() == lf.algebra.dim(), errc::invalid_parameters,
          "embedding must list one row per basis element");
  require(lf.algebra.p() == ambient.algebra.p(), errc::invalid_parameters,
          "characteristic mismatch");

  json inputs = json::object();
  inputs["file"] = lie_file;
  inputs["ambient"] = ambient_file;
  inputs["degree"] = degree;
  RunReport report("envelope", inputs);

  // the embedding must be an injective Lie homomorphism
  bool hom = true;
  for (std::size_t i = 0; i < lf.algebra.dim() && hom; ++i)
    for (std::size_t j = i + 1; j < lf.algebra.dim(); ++j) {
      FpVec expect(ambient.algebra.dim(), 0);
      FpVec abstract = lf.algebra.bracket(lf.algebra.basis_vector(i), lf.algebra.basis_vector(j));
      for (std::size_t k = 0; k < lf.algebra.dim(); ++k)
        expect = fpvec_add(expect, fpvec_scale(abstract[k], embedding[k], ambient.algebra.p()),
                           ambient.algebra.p());
      if (!(ambient.algebra.bracket(embedding[i], embedding[j]) == expect)) hom = false;
    }
  report.add_verdict("embedding_homomorphism", lie_file, hom);
  if (!hom) return finish(report, opts);

  EnvelopeChain chain = p_closure_chain(ambient.algebra, embedding);
  json steps = json::array();
  bool steps_ok = true;
  for (const auto& st : chain.steps) {
    json sj;
    sj["y"] = detail::fp_csv(st.y);
    sj["x"] = detail::fp_csv(st.x);
    steps.push_back(std::move(sj));
    if (!(p_power(ambient.algebra, st.y) == st.x)) steps_ok = false;
  }
  report.add_data("chain_length", chain.q());
  report.add_data("steps", std::move(steps));
  report.add_verdict("chain_steps", lie_file, steps_ok);

  bool ideals = true;
  const FpSubspace& top = chain.chain.back();
  for (const auto& Li : chain.chain)
    for (std::size_t a = 0; a < top.dim() && ideals; ++a)
      for (std::size_t b = 0; b < Li.dim(); ++b)
        if (!Li.contains(ambient.algebra.bracket(top.row(a), Li.row(b)))) ideals = false;
  report.add_verdict("chain_ideals", lie_file, ideals);

  EnvelopePresentation env = envelope_presentation(chain);
  report.add_data("envelope_dim", env.algebra.dim());
  std::vector<UElement> us = central_u_variables(env);  // raises CentralityFailure
  json uj = json::array();
  for (const auto& u : us) uj.push_back(uelement_to_json(u));
  report.add_data("u_variables", std::move(uj));
  report.add_verdict("centrality", lie_file, true);

  bool free_ok = freeness_check(env, us, degree);
  report.add_verdict("freeness", lie_file, free_ok, json(degree));
  return finish(report, opts);
}

// ---- corpus -------------------------------------------------------------------------

int run_corpus_list(const OutputOptions& opts) {
  RunReport report("corpus list", json::object());
  json arr = json::array();
  for (const auto& e : corpus_entries()) {
    json ej;
    ej["name"] = e.name;
    ej["kind"] = e.kind;
    ej["description"] = e.description;
    arr.push_back(std::move(ej));
  }
  report.add_data("instances", std::move(arr));
  return finish(report, opts);
}

int run_corpus_emit(const std::string& name, const OutputOptions& opts) {
  json j = corpus_emit(name);
  if (opts.out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    save_json(opts.out_path, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in p-division algebras and modular Lie theory"};
  app.require_subcommand(1);

  OutputOptions opts;
  auto add_output_options = [&opts](CLI::App* cmd) {
    cmd->add_option("--out", opts.out_path, "write the JSON report to a file instead of stdout");
    cmd->add_flag("--timings", opts.timings, "include wall-clock timings in the report");
  };

  std::string file, torus_spec, gens_file, ambient_file, emit_name, point_target;
  std::vector<std::uint64_t> zass_args;
  std::uint64_t seeds = 20, seed_base = 0;
  std::uint32_t height = 2, degree = 0;  // 0: freeness bound defaults to p + 1
  std::vector<std::string> explicit_points;

  auto* check = app.add_subcommand("check", "run one named verification");
  std::string target;
  check->add_option("target", target, "jacobi | torus | walrus | galois-roundtrip")->required();
  check->add_option("--file", file, "algebra or lie file (JSON)");
  check->add_option("--zassenhaus", zass_args, "construct zassenhaus(p, m) instead of reading a file")
      ->expected(2);
  check->add_option("--torus", torus_spec, "comma-separated toral generator expressions");
  add_output_options(check);

  auto* treport = app.add_subcommand("torus-report", "weights, Galois table and maximality report");
  treport->add_option("--file", file, "algebra file (JSON)")->required();
  treport->add_option("--torus", torus_spec, "comma-separated toral generator expressions")
      ->required();
  add_output_options(treport);

  auto* spec = app.add_subcommand("specialize", "specialization soundness over sampled points");
  spec->add_option("--file", file, "algebra file (JSON)")->required();
  spec->add_option("--gens", gens_file, "generator file (JSON)")->required();
  spec->add_option("--seeds", seeds, "number of sampled points");
  spec->add_option("--seed", seed_base, "first seed");
  spec->add_option("--height", height, "degree bound for sampled coordinates");
  spec->add_option("--point", explicit_points, "explicit point, e.g. \"u=0\"; repeatable");
  add_output_options(spec);

  auto* env = app.add_subcommand("envelope", "p-envelope chain, central variables, freeness");
  env->add_option("--file", file, "lie file with an embedding (JSON)")->required();
  env->add_option("--ambient", ambient_file, "restricted ambient lie file (JSON)")->required();
  env->add_option("--degree", degree, "freeness degree bound (default p + 1)");
  add_output_options(env);

  auto* corpus = app.add_subcommand("corpus", "built-in instances");
  auto* clist = corpus->add_subcommand("list", "list instances");
  add_output_options(clist);
  auto* cemit = corpus->add_subcommand("emit", "emit one instance as JSON");
  cemit->add_option("name", emit_name, "instance name")->required();
  add_output_options(cemit);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return run_check(target, file, zass_args, torus_spec, opts);
    if (*treport) return run_check("torus", file, {}, torus_spec, opts);
    if (*spec) return run_specialize(file, gens_file, seeds, seed_base, height, explicit_points, opts);
    if (*env) return run_envelope(file, ambient_file, degree, opts);
    if (*clist) return run_corpus_list(opts);
    if (*cemit) return run_corpus_emit(emit_name, opts);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const skewlab::error& e) {
    std::cerr << e.what() << '\n';
    return classify_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
