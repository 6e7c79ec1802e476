#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tauq/workspace.hpp"

namespace tauq {

struct RunOptions {
  std::string command;
  std::string module_name;
  std::uint64_t seed = 1;
  bool verify = false;
  std::string probes = "all";
  std::string presentation = "minimal";  // or a coefficient-matrix file path
  std::size_t len_cap = 24;
  std::size_t mult_cap = 8;
  BuildCaps build_caps{};
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 error, 2 undecided or window-unsafe
  std::string text;
  Json json;
};

namespace rundetail {

template <scalar_field K>
std::vector<std::size_t> module_support(const AlgebraPtr<K>& alg, bool projective,
                                        std::size_t label) {
  std::vector<std::size_t> support;
  for (std::size_t v = 0; v < alg->quiver().vertex_count(); ++v) {
    const std::size_t d = projective ? alg->pair_dim(label, v) : alg->pair_dim(v, label);
    if (d > 0) support.push_back(v);
  }
  return support;
}

/// The window-safety rule: a computation is stamped unsafe when any
/// canonical projective or injective it instantiated is supported on a
/// declared boundary vertex.
template <scalar_field K>
bool window_unsafe(const Workspace<K>& ws, const std::set<std::size_t>& proj_labels,
                   const std::set<std::size_t>& inj_labels) {
  if (ws.boundary.empty()) return false;
  for (std::size_t x : proj_labels)
    for (std::size_t v : module_support(ws.algebra, true, x))
      if (ws.boundary.count(v)) return true;
  for (std::size_t x : inj_labels)
    for (std::size_t v : module_support(ws.algebra, false, x))
      if (ws.boundary.count(v)) return true;
  return false;
}

template <scalar_field K>
RepPtr<K> find_module(const Workspace<K>& ws, const std::string& name) {
  for (const auto& [n, m] : ws.modules)
    if (n == name) return m;
  throw input_error("no module named '" + name + "' in the workspace");
}

template <scalar_field K>
std::vector<std::pair<std::string, RepPtr<K>>> probe_list(const Workspace<K>& ws,
                                                          const std::string& spec) {
  if (spec == "all") return ws.modules;
  std::vector<std::pair<std::string, RepPtr<K>>> out;
  std::stringstream s(spec);
  std::string name;
  while (std::getline(s, name, ',')) out.emplace_back(name, find_module(ws, name));
  return out;
}

template <scalar_field K>
std::string match_name(const Workspace<K>& ws, const RepPtr<K>& m, std::uint64_t seed) {
  for (const auto& [n, candidate] : ws.modules)
    if (is_isomorphic(m, candidate, seed)) return n;
  return "";
}

template <scalar_field K>
Json dims_json(const RepPtr<K>& m) {
  Json j = Json::object();
  const Quiver& q = m->algebra()->quiver();
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    j[q.vertex_id(v)] = m->dim_at(v);
  return j;
}

template <scalar_field K>
std::string dims_str(const RepPtr<K>& m) {
  const Quiver& q = m->algebra()->quiver();
  std::string s = "(";
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    s += (v ? "," : "") + std::to_string(m->dim_at(v));
  return s + ")";
}

/// Labels of the minimal presentation (used for window stamping).
template <scalar_field K>
std::set<std::size_t> presentation_labels(const RepPtr<K>& m, std::uint64_t seed) {
  std::set<std::size_t> labels;
  for (const auto& s : decompose(m, seed)) {
    Presentation<K> pres = minimal_presentation(s.piece);
    labels.insert(pres.p0.labels.begin(), pres.p0.labels.end());
    labels.insert(pres.p1.labels.begin(), pres.p1.labels.end());
  }
  return labels;
}

// Parses the auxiliary coefficient-matrix file accepted by
// `tau --presentation FILE`:
//   source x1 x2 ...
//   target y1 ...
//   entry <j> <i> <expr>
// where <expr> uses the relation syntax extended by e_<vertex> and 0, and
// describes an element supported on paths y_j -> x_i.
template <scalar_field K>
ProjMap<K> parse_projmap_file(const Workspace<K>& ws, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open presentation file: " + path);
  const AlgebraPtr<K>& alg = ws.algebra;
  const Quiver& q = alg->quiver();
  std::vector<std::size_t> src, tgt;
  std::map<std::pair<std::size_t, std::size_t>, std::string> raw_entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::stringstream s(line);
    std::string head;
    if (!(s >> head) || head[0] == '#') continue;
    if (head == "source" || head == "target") {
      std::string v;
      while (s >> v) (head == "source" ? src : tgt).push_back(q.vertex_index(v));
    } else if (head == "entry") {
      std::size_t j, i;
      if (!(s >> j >> i)) throw parse_error("entry needs two indices", lineno, 1);
      std::string rest;
      std::getline(s, rest);
      raw_entries[{j, i}] = rest;
    } else {
      throw parse_error("unknown presentation directive '" + head + "'", lineno, 1);
    }
  }
  ProjMap<K> pm{alg, src, tgt, {}};
  pm.entries.assign(tgt.size(), {});
  for (std::size_t j = 0; j < tgt.size(); ++j)
    pm.entries[j].assign(src.size(), alg->zero());
  const K one = alg->field_one();
  for (const auto& [ji, expr] : raw_entries) {
    auto [j, i] = ji;
    if (j >= tgt.size() || i >= src.size())
      throw input_error("entry index out of range in presentation file");
    // Tokenize with the workspace lexer by wrapping into a relation-like line.
    std::stringstream ts(expr);
    PathCombo<K> combo;
    std::string term;
    // Split on '+'/'-' manually to keep this parser small.
    std::string cleaned;
    for (char c : expr) cleaned += c;
    std::size_t pos = 0;
    long long sign = 1;
    auto skip_ws = [&] { while (pos < cleaned.size() && std::isspace((unsigned char)cleaned[pos])) ++pos; };
    skip_ws();
    if (pos < cleaned.size() && cleaned[pos] == '0' && pos + 1 >= cleaned.size()) continue;
    while (pos < cleaned.size()) {
      skip_ws();
      if (pos < cleaned.size() && (cleaned[pos] == '+' || cleaned[pos] == '-')) {
        sign = cleaned[pos] == '-' ? -1 : 1;
        ++pos;
        skip_ws();
      }
      // Read one term up to the next +/- at top level.
      std::string t;
      while (pos < cleaned.size() && cleaned[pos] != '+' && cleaned[pos] != '-')
        t += cleaned[pos++];
      // Parse "coef*mono" or "mono" or "e_v" with '*'-separated factors.
      long long num = 1, den = 1;
      std::vector<std::string> ids;
      std::stringstream fs(t);
      std::string factor;
      bool first = true;
      while (std::getline(fs, factor, '*')) {
        // Trim.
        auto b = factor.find_first_not_of(" \t");
        auto e = factor.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        factor = factor.substr(b, e - b + 1);
        if (first && !factor.empty() &&
            (std::isdigit((unsigned char)factor[0]))) {
          auto slash = factor.find('/');
          if (slash == std::string::npos) num = std::stoll(factor);
          else {
            num = std::stoll(factor.substr(0, slash));
            den = std::stoll(factor.substr(slash + 1));
          }
        } else {
          ids.push_back(factor);
        }
        first = false;
      }
      if (ids.empty()) throw input_error("empty monomial in presentation entry");
      Path p = [&]() {
        if (ids.size() == 1 && ids[0].rfind("e_", 0) == 0)
          return Path::trivial(q.vertex_index(ids[0].substr(2)));
        std::vector<std::size_t> traversal;
        for (auto it = ids.rbegin(); it != ids.rend(); ++it)
          traversal.push_back(q.arrow_index(*it));
        return Path::of_arrows(q, traversal);
      }();
      add_term(combo, p, field_ops<K>::from_ratio(one, sign * num, den));
    }
    pm.entries[j][i] = alg->normalize(combo);
  }
  pm.validate();
  return pm;
}

inline Json tri_json(Tri t) { return to_string(t); }

}  // namespace rundetail

template <scalar_field K>
RunResult run_typed(const WorkspaceData& data, const RunOptions& opt, const K& one) {
  using namespace rundetail;
  Workspace<K> ws = instantiate(data, one, opt.build_caps);
  const AlgebraPtr<K>& alg = ws.algebra;
  const Quiver& q = alg->quiver();
  RunResult res;
  res.json["command"] = opt.command;
  res.json["status"] = "ok";
  std::ostringstream out;
  bool unsafe = false;

  auto finish = [&](int code) {
    if (unsafe) {
      out << "window-unsafe: a projective or injective touched a boundary vertex\n";
      res.json["window_unsafe"] = true;
      code = std::max(code, 2);
    }
    res.exit_code = code;
    res.text = out.str();
    return res;
  };

  const bool undecided_algebra = !alg->status().decided();

  if (opt.command == "build") {
    res.json["algebra_status"] = alg->status().str();
    res.json["dim"] = alg->dim();
    out << "status: " << alg->status().str() << "\n";
    out << "basis dimension: " << alg->dim() << "\n";
    Json pairs = Json::array();
    for (std::size_t x = 0; x < q.vertex_count(); ++x)
      for (std::size_t y = 0; y < q.vertex_count(); ++y)
        if (alg->pair_dim(x, y) > 0) {
          Json p;
          p["from"] = q.vertex_id(x);
          p["to"] = q.vertex_id(y);
          p["dim"] = alg->pair_dim(x, y);
          pairs.push_back(p);
          out << "dim e_" << q.vertex_id(y) << " L e_" << q.vertex_id(x) << " = "
              << alg->pair_dim(x, y) << "\n";
        }
    res.json["pairs"] = pairs;
    Json basis = Json::array();
    for (std::uint32_t i = 0; i < alg->dim(); ++i)
      basis.push_back(alg->basis_word(i).str(q));
    res.json["basis"] = basis;
    if (undecided_algebra) {
      res.json["status"] = "undecided";
      return finish(2);
    }
    return finish(0);
  }

  if (opt.command == "classify" || opt.command == "conclusions") {
    ClassificationReport<K> rep = classify(alg, {opt.len_cap, opt.mult_cap});
    res.json["algebra_status"] = rep.status.str();
    res.json["locally_semiperfect"] = tri_json(rep.locally_semiperfect);
    res.json["locally_semiprimary"] = tri_json(rep.locally_semiprimary);
    res.json["locally_left_bounded"] = tri_json(rep.locally_left_bounded);
    res.json["locally_right_bounded"] = tri_json(rep.locally_right_bounded);
    res.json["left_eventually_multiserial"] = tri_json(rep.left_eventually_multiserial);
    res.json["right_eventually_multiserial"] = tri_json(rep.right_eventually_multiserial);
    res.json["locally_left_noetherian"] = tri_json(rep.locally_left_noetherian);
    res.json["locally_right_noetherian"] = tri_json(rep.locally_right_noetherian);
    if (rep.semiperfect_witness) {
      res.json["semiperfect_witness"] = alg->element_str(*rep.semiperfect_witness);
      res.json["semiperfect_witness_vertex"] =
          q.vertex_id(*rep.semiperfect_witness_vertex);
    }
    if (rep.semiprimary_witness) {
      res.json["semiprimary_witness_prefix"] = rep.semiprimary_witness->first.str(q);
      res.json["semiprimary_witness_cycle"] = rep.semiprimary_witness->second.str(q);
    }
    Json verts = Json::array();
    for (const auto& v : rep.vertices) {
      Json jv;
      jv["vertex"] = q.vertex_id(v.vertex);
      jv["boundary"] = ws.boundary.count(v.vertex) > 0;
      if (v.dim_proj) jv["dim_paths_out"] = *v.dim_proj;
      if (v.dim_inj) jv["dim_paths_in"] = *v.dim_inj;
      jv["corner_local"] = tri_json(v.corner_local);
      jv["multiserial_left"] = tri_json(v.multiserial_left);
      if (v.multiserial_left_n) jv["multiserial_left_n"] = *v.multiserial_left_n;
      jv["multiserial_right"] = tri_json(v.multiserial_right);
      if (v.multiserial_right_n) jv["multiserial_right_n"] = *v.multiserial_right_n;
      verts.push_back(jv);
    }
    res.json["vertices"] = verts;

    out << "status: " << rep.status.str() << "\n";
    out << "locally semiperfect: " << to_string(rep.locally_semiperfect);
    if (rep.semiperfect_witness)
      out << " (witness idempotent " << alg->element_str(*rep.semiperfect_witness)
          << " at " << q.vertex_id(*rep.semiperfect_witness_vertex) << ")";
    out << "\n";
    out << "locally semiprimary: " << to_string(rep.locally_semiprimary);
    if (rep.semiprimary_witness)
      out << " (witness: nonzero path family " << rep.semiprimary_witness->first.str(q)
          << " pumped by " << rep.semiprimary_witness->second.str(q) << ")";
    out << "\n";
    out << "locally left bounded: " << to_string(rep.locally_left_bounded) << "\n";
    out << "locally right bounded: " << to_string(rep.locally_right_bounded) << "\n";
    out << "left eventually multiserial: " << to_string(rep.left_eventually_multiserial)
        << "\n";
    out << "right eventually multiserial: "
        << to_string(rep.right_eventually_multiserial) << "\n";
    out << "locally left noetherian (implied): "
        << to_string(rep.locally_left_noetherian) << "\n";
    out << "locally right noetherian (implied): "
        << to_string(rep.locally_right_noetherian) << "\n";
    for (const auto& v : rep.vertices) {
      out << "vertex " << q.vertex_id(v.vertex);
      if (ws.boundary.count(v.vertex)) out << " [boundary]";
      if (v.dim_proj) out << " dim_out=" << *v.dim_proj;
      if (v.dim_inj) out << " dim_in=" << *v.dim_inj;
      out << " local=" << to_string(v.corner_local);
      if (v.multiserial_left_n) out << " n_left=" << *v.multiserial_left_n;
      if (v.multiserial_right_n) out << " n_right=" << *v.multiserial_right_n;
      out << "\n";
    }

    if (opt.command == "conclusions") {
      Json cj = Json::array();
      for (const auto& c : ass_theorem_conclusions(rep)) {
        Json e;
        e["id"] = c.id;
        e["text"] = c.text;
        e["status"] = to_string(c.status);
        cj.push_back(e);
        out << "[" << to_string(c.status) << "] " << c.text << "\n";
      }
      res.json["conclusions"] = cj;
      if (cj.empty()) out << "no conclusions apply\n";
    }
    if (undecided_algebra) {
      res.json["status"] = "undecided";
      return finish(2);
    }
    return finish(0);
  }

  if (opt.command == "decompose") {
    RepPtr<K> m = find_module(ws, opt.module_name);
    auto parts = decompose(m, opt.seed);
    Json js = Json::array();
    out << "summands of " << opt.module_name << " (seed " << opt.seed << "):\n";
    for (const auto& s : parts) {
      Json e;
      e["dims"] = dims_json(s.piece);
      e["total_dim"] = s.piece->total_dim();
      e["endo_local"] = to_string(s.endo_local);
      const std::string match = match_name(ws, s.piece, opt.seed);
      if (!match.empty()) e["isomorphic_to"] = match;
      js.push_back(e);
      out << "  " << dims_str(s.piece) << " endo-local: " << to_string(s.endo_local);
      if (!match.empty()) out << " (isomorphic to " << match << ")";
      out << "\n";
    }
    res.json["summands"] = js;
    return finish(0);
  }

  if (opt.command == "tau" || opt.command == "tau-minus") {
    RepPtr<K> m = find_module(ws, opt.module_name);
    std::set<std::size_t> labels;
    RepPtr<K> result;
    if (opt.command == "tau" && opt.presentation != "minimal") {
      ProjMap<K> pm = parse_projmap_file(ws, opt.presentation);
      MaterializedProjMap<K> mat = materialize(pm);
      auto parts = exact_parts(mat.morphism);
      if (!is_isomorphic(parts.cokernel, m, opt.seed))
        throw input_error(
            "the presentation file does not present the module " + opt.module_name);
      Presentation<K> pres = presentation_from_parts(
          mat.source, mat.target, mat.morphism, parts.coker_proj, parts.cokernel, false);
      labels.insert(pres.p0.labels.begin(), pres.p0.labels.end());
      labels.insert(pres.p1.labels.begin(), pres.p1.labels.end());
      result = tau_with_presentation(pres).module;
      res.json["presentation"] = "file";
    } else {
      std::vector<RepPtr<K>> pieces;
      for (const auto& s : decompose(m, opt.seed)) {
        if (opt.command == "tau") {
          Presentation<K> pres = minimal_presentation(s.piece);
          labels.insert(pres.p0.labels.begin(), pres.p0.labels.end());
          labels.insert(pres.p1.labels.begin(), pres.p1.labels.end());
          pieces.push_back(tau_with_presentation(pres).module);
        } else {
          Copresentation<K> cop = minimal_copresentation(s.piece);
          labels.insert(cop.i0.labels.begin(), cop.i0.labels.end());
          labels.insert(cop.i1.labels.begin(), cop.i1.labels.end());
          pieces.push_back(tau_minus_with_copresentation(cop).module);
        }
      }
      result = pieces.empty() ? zero_module(alg) : direct_sum(alg, pieces).sum;
      res.json["presentation"] = "minimal";
    }
    unsafe = window_unsafe(ws, labels, labels);
    res.json["dims"] = dims_json(result);
    res.json["total_dim"] = result->total_dim();
    out << (opt.command == "tau" ? "tau " : "tau-minus ") << opt.module_name << " = "
        << dims_str(result) << "\n";
    if (result->is_zero_module()) {
      const bool trivial_reason =
          opt.command == "tau" ? is_projective(m) : is_injective(m);
      if (trivial_reason) {
        const char* note = opt.command == "tau" ? "projective input, tau = 0"
                                                : "injective input, tau-minus = 0";
        res.json["note"] = note;
        out << "note: " << note << "\n";
      }
    } else {
      const std::string match = match_name(ws, result, opt.seed);
      if (!match.empty()) {
        res.json["isomorphic_to"] = match;
        out << "isomorphic to " << match << "\n";
      }
    }
    return finish(0);
  }

  if (opt.command == "ass") {
    RepPtr<K> m = find_module(ws, opt.module_name);
    AlmostSplit<K> result = almost_split_sequence(m, opt.seed);
    std::set<std::size_t> labels;
    labels.insert(result.socle_class.pres->p0.labels.begin(),
                  result.socle_class.pres->p0.labels.end());
    labels.insert(result.socle_class.pres->p1.labels.begin(),
                  result.socle_class.pres->p1.labels.end());
    unsafe = window_unsafe(ws, labels, labels);
    res.json["start_dims"] = dims_json(result.tau_m);
    res.json["middle_dims"] = dims_json(result.seq.f.target());
    res.json["end_dims"] = dims_json(m);
    res.json["split"] = result.seq.split;
    res.json["socle_annihilated"] = result.annihilated_by_rad;
    res.json["start_indecomposable"] = to_string(result.start_indecomposable);
    out << "almost split sequence: 0 -> " << dims_str(result.tau_m) << " -> "
        << dims_str(result.seq.f.target()) << " -> " << dims_str(m) << " -> 0\n";
    const std::string start_match = match_name(ws, result.tau_m, opt.seed);
    const std::string mid_match = match_name(ws, result.seq.f.target(), opt.seed);
    if (!start_match.empty()) {
      res.json["start_isomorphic_to"] = start_match;
      out << "start term isomorphic to " << start_match << "\n";
    }
    if (!mid_match.empty()) {
      res.json["middle_isomorphic_to"] = mid_match;
      out << "middle term isomorphic to " << mid_match << "\n";
    }
    if (opt.verify) {
      std::vector<RepPtr<K>> probe_reps;
      Json names = Json::array();
      for (const auto& [n, p] : probe_list(ws, opt.probes)) {
        probe_reps.push_back(p);
        names.push_back(n);
      }
      auto report = verify_almost_split(result.seq, probe_reps, opt.seed);
      Json vj;
      vj["probes"] = names;
      vj["exact"] = report.exact;
      vj["nonsplit"] = report.nonsplit;
      vj["start_indecomposable"] = to_string(report.start_indecomposable);
      vj["end_indecomposable"] = to_string(report.end_indecomposable);
      vj["right_almost_split"] = to_string(report.right_almost_split);
      vj["left_almost_split"] = to_string(report.left_almost_split);
      vj["right_minimal"] = to_string(report.right_minimal);
      vj["left_minimal"] = to_string(report.left_minimal);
      vj["failures"] = report.failures;
      vj["all_pass"] = report.all_pass();
      res.json["verification"] = vj;
      out << "verification (" << probe_reps.size()
          << " probes): " << (report.all_pass() ? "all clauses pass" : "FAILURES") << "\n";
      for (const auto& f : report.failures) out << "  failure: " << f << "\n";
    }
    return finish(0);
  }

  if (opt.command == "duality-check") {
    RepPtr<K> m = find_module(ws, opt.module_name);
    std::vector<RepPtr<K>> probe_reps;
    Json names = Json::array();
    std::set<std::size_t> labels = presentation_labels(m, opt.seed);
    for (const auto& [n, p] : probe_list(ws, opt.probes)) {
      probe_reps.push_back(p);
      names.push_back(n);
      if (!p->is_zero_module()) {
        auto pl = presentation_labels(p, opt.seed);
        labels.insert(pl.begin(), pl.end());
      }
    }
    unsafe = window_unsafe(ws, labels, labels);
    auto report = ar_duality_check(m, probe_reps, opt.seed);
    Json rows = Json::array();
    out << "AR-duality dimension identities for " << opt.module_name << ":\n";
    for (const auto& r : report.rows) {
      Json e;
      e["probe"] = names[r.probe];
      e["ext1_probe_tau"] = r.ext_probe_tau;
      e["stable_hom_m_probe"] = r.stable_m_probe;
      e["ext1_m_probe"] = r.ext_m_probe;
      e["costable_hom_probe_tau"] = r.costable_probe_tau;
      e["projective_side_ok"] = r.projective_side_ok;
      e["injective_side_ok"] = r.injective_side_ok;
      rows.push_back(e);
      out << "  probe " << names[r.probe] << ": Ext1(X,tauM)=" << r.ext_probe_tau
          << " stable(M,X)=" << r.stable_m_probe << " | Ext1(M,X)=" << r.ext_m_probe
          << " costable(X,tauM)=" << r.costable_probe_tau << " "
          << (r.projective_side_ok && r.injective_side_ok ? "ok" : "MISMATCH") << "\n";
    }
    res.json["rows"] = rows;
    res.json["all_ok"] = report.all_ok();
    return finish(0);
  }

  if (opt.command == "dualize") {
    RepPtr<K> m = find_module(ws, opt.module_name);
    RepPtr<K> dm = dualize(m);
    res.json["dims"] = dims_json(dm);
    // Print a complete opposite workspace with the dual module.
    WorkspaceData op = data;
    for (auto& a : op.arrows) std::swap(a.src, a.tgt);
    for (auto& rel : op.relations)
      for (auto& t : rel) std::reverse(t.monomial.begin(), t.monomial.end());
    op.modules.clear();
    op.boundary = data.boundary;
    ModuleDecl md;
    md.name = "D_" + opt.module_name;
    const Quiver& oq = dm->algebra()->quiver();
    for (std::size_t v = 0; v < oq.vertex_count(); ++v)
      if (dm->dim_at(v) > 0) md.dims.emplace_back(oq.vertex_id(v), dm->dim_at(v));
    auto as_rational = [](const std::string& s) {
      const auto slash = s.find('/');
      if (slash == std::string::npos) return Rational(s);
      return Rational(s.substr(0, slash)) / Rational(s.substr(slash + 1));
    };
    for (std::size_t a = 0; a < oq.arrow_count(); ++a) {
      const Matrix<K>& blk = dm->action(a);
      if (blk.is_zero()) continue;
      MatrixDecl mdl;
      mdl.arrow = oq.arrow(a).id;
      for (std::size_t i = 0; i < blk.rows(); ++i) {
        std::vector<Rational> row;
        for (std::size_t j = 0; j < blk.cols(); ++j)
          row.push_back(as_rational(field_ops<K>::str(blk.at(i, j))));
        mdl.entries.push_back(std::move(row));
      }
      md.mats.push_back(std::move(mdl));
    }
    op.modules.push_back(std::move(md));
    const std::string text = print_workspace(op);
    res.json["opposite_workspace"] = text;
    out << "# dual module over the opposite quiver\n" << text;
    return finish(0);
  }

  throw input_error("unknown command: " + opt.command);
}

inline RunResult run_command(const WorkspaceData& data, const RunOptions& opt) {
  try {
    if (data.field_p == 0) return run_typed<Rational>(data, opt, Rational(1));
    return run_typed<Fp>(data, opt, Fp(1, data.field_p));
  } catch (const undecided_error& e) {
    RunResult res;
    res.exit_code = 2;
    res.json["command"] = opt.command;
    res.json["status"] = "undecided";
    res.json["message"] = e.what();
    res.text = std::string("undecided: ") + e.what() + "\n";
    return res;
  } catch (const parse_error& e) {
    RunResult res;
    res.exit_code = 1;
    res.json["command"] = opt.command;
    res.json["status"] = "error";
    res.json["message"] = e.what();
    res.text = std::string("error: ") + e.what() + "\n";
    return res;
  } catch (const error& e) {
    RunResult res;
    res.exit_code = 1;
    res.json["command"] = opt.command;
    res.json["status"] = "error";
    res.json["message"] = e.what();
    res.text = std::string("error: ") + e.what() + "\n";
    return res;
  }
}

}  // namespace tauq
