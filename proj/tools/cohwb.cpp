#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coh/acceptance.hpp"
#include "coh/families.hpp"
#include "coh/internal_logic.hpp"
#include "coh/json_io.hpp"

using namespace coh;

namespace {

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ctx {
  bool json_out = false;
  int threads = 1;
  run_report rep;
  std::ostringstream text;
};

std::string slurp(ctx& c, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  c.rep.inputs[path] = fnv1a(ss.str());
  return ss.str();
}

theory load_theory(ctx& c, const std::string& path) {
  auto t = parse_theory(slurp(c, path));
  if (auto e = check_theory(t); !e.empty()) throw input_error(path + ": " + e);
  return t;
}

json load_json(ctx& c, const std::string& path) {
  try {
    return json::parse(slurp(c, path));
  } catch (const json::parse_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

std::vector<std::string> split_vars(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else
      cur += ch;
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int code_of(verdict_kind k) { return k == verdict_kind::proved ? 0 : k == verdict_kind::refuted ? 1 : 2; }

struct bounds {
  int depth = 8, size = 8, model_size = 3, formula_depth = 2, arity = 2, model_bound = 3;
  long steps = 50000;
  entail_options eo() const {
    entail_options o;
    o.b.depth = depth;
    o.b.size = size;
    o.b.max_steps = steps;
    o.model_size = model_size;
    return o;
  }
  json to_json() const {
    return {{"depth", depth},         {"size", size},   {"steps", steps}, {"model_size", model_size},
            {"formula_depth", formula_depth}, {"arity", arity}, {"model_bound", model_bound}};
  }
};

void add_budget(CLI::App* a, bounds& b) {
  a->add_option("--depth", b.depth, "branching budget per branch");
  a->add_option("--size", b.size, "element budget per branch");
  a->add_option("--steps", b.steps, "total chase steps");
  a->add_option("--model-size", b.model_size, "countermodel search bound");
}

void add_ts(CLI::App* a, bounds& b) {
  a->add_option("--arity", b.arity, "arity cutoff N");
  a->add_option("--model-bound", b.model_bound, "model size bound B");
  a->add_option("--formula-depth,--profile-depth", b.formula_depth, "profile depth d");
}

typespace_options ts_opts(const bounds& b) {
  typespace_options o;
  o.N = b.arity;
  o.B = b.model_bound;
  o.d = b.formula_depth;
  return o;
}

json stability_json(const typespace& ts) {
  return {{"run", ts.stability.run}, {"stable", ts.stability.stable}, {"counts", ts.stability.counts},
          {"note", ts.stability.note}};
}

void warn_unstable(const typespace& ts) {
  if (!(ts.stability.run && ts.stability.stable))
    std::cerr << "warning: approximation of " << ts.t.name << " is not certified stable (" << ts.stability.note << ")\n";
}

std::string model_text(const finite_model& m) { return to_json(m).dump(); }

}  // namespace

int main(int argc, char** argv) {
  ctx c;
  bounds b;
  CLI::App app{"coherent logic workbench"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "print the version and JSON schema versions");
  app.add_flag("--json", c.json_out, "emit a machine-readable report");
  app.add_option("--threads", c.threads, "worker cap; results do not depend on it")->check(CLI::PositiveNumber);

  std::string a1, a2, a3, formula_text, vars_text, assign_text, mode, pushout, source, target, mid, fmap, theta;
  int codomain = 1, samples = 40;
  bool emit_proof = false, roundtrip = false, list = false, no_stability = false, trivial = false;

  auto* parse = app.add_subcommand("parse", "parse and print a theory");
  parse->add_option("theory", a1)->required();
  parse->add_option("--formula", formula_text);
  parse->add_option("--vars", vars_text);

  auto* prove = app.add_subcommand("prove", "decide a sequent: proof, countermodel or unknown");
  prove->add_option("theory", a1)->required();
  prove->add_option("sequent", a2)->required();
  prove->add_flag("--emit-proof", emit_proof);
  add_budget(prove, b);

  auto* refute = app.add_subcommand("refute", "search for a finite countermodel");
  refute->add_option("theory", a1)->required();
  refute->add_option("sequent", a2)->required();
  refute->add_option("--model-size", b.model_size);

  auto* evalc = app.add_subcommand("eval", "evaluate a formula, or check the axioms, in a model");
  evalc->add_option("model", a1)->required();
  evalc->add_option("theory", a2)->required();
  evalc->add_option("--formula", formula_text);
  evalc->add_option("--vars", vars_text);
  evalc->add_option("--assign", assign_text);

  auto* models = app.add_subcommand("models", "enumerate models up to isomorphism");
  models->add_option("theory", a1)->required();
  models->add_option("--max-size", b.model_size);
  models->add_flag("--list", list);

  auto* tsc = app.add_subcommand("typespace", "finite approximation of the type space functor");
  tsc->add_option("theory", a1)->required();
  add_ts(tsc, b);
  tsc->add_option("--emit", mode, "json");
  tsc->add_flag("--no-stability", no_stability);

  auto* dual = app.add_subcommand("duality", "finite Stone duality");
  dual->add_option("--lattice", a1);
  dual->add_option("--poset", a2);
  dual->add_flag("--roundtrip", roundtrip);

  auto* cbc = app.add_subcommand("check-bc", "Beck-Chevalley checks");
  cbc->add_option("--theory", a1);
  cbc->add_option("--pushout", pushout);
  cbc->add_option("--square", a2);
  cbc->add_option("--functor", a3);
  cbc->add_option("--interp", mode);
  cbc->add_option("--source", source);
  cbc->add_option("--target", target);
  cbc->add_option("--f", fmap, "index map such as [1,1]");
  cbc->add_option("--m", codomain);
  add_ts(cbc, b);

  auto* cfr = app.add_subcommand("check-frobenius", "openness versus left adjoint with Frobenius");
  cfr->add_option("--hom", a1);
  cfr->add_option("--map", a2);

  auto* interp = app.add_subcommand("interpret", "interpretations: check, apply, compose, cell");
  interp->add_option("action", mode)->required()->check(CLI::IsMember({"check", "apply", "compose", "cell"}));
  interp->add_option("file", a1);
  interp->add_option("file2", a2);
  interp->add_option("--source", source)->required();
  interp->add_option("--target", target)->required();
  interp->add_option("--mid", mid);
  interp->add_option("--formula", formula_text);
  interp->add_option("--vars", vars_text);
  interp->add_option("--theta", theta);
  interp->add_option("--samples", samples);
  add_budget(interp, b);

  auto* thf = app.add_subcommand("thf", "presentations: build, validate, roundtrip");
  thf->add_option("action", mode)->required()->check(CLI::IsMember({"build", "validate", "roundtrip"}));
  thf->add_option("file", a1);
  thf->add_option("--theory", a2);
  thf->add_option("--lattice", a3);
  thf->add_flag("--trivial", trivial);
  add_ts(thf, b);

  auto* rt = app.add_subcommand("roundtrip", "Th after S on a theory");
  rt->add_option("theory", a1)->required();
  rt->add_option("--samples", samples);
  add_ts(rt, b);
  add_budget(rt, b);

  int criterion = 0;
  auto* acc = app.add_subcommand("accept", "run one acceptance criterion");
  acc->add_option("criterion", criterion)->required()->check(CLI::Range(1, 11));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  if (version) {
    std::cout << "cohwb 1.0\n";
    for (auto& [k, v] : schema_versions()) std::cout << "  " << k << " schema " << v << "\n";
    return 0;
  }
  auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
  if (!sub) {
    std::cerr << app.help();
    return 3;
  }
  c.rep.command = sub->get_name();
  c.rep.bounds = b.to_json();
  c.rep.bounds["threads"] = c.threads;
  auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  auto& out = c.text;
  try {
    if (sub == acc) {
      auto r = run_criterion(criterion);
      code = r.pass ? 0 : 1;
      out << format_result(r, true);
      c.rep.verdicts.push_back({{"criterion", r.id}, {"pass", r.pass}, {"notes", r.notes}});
    } else if (sub == parse) {
      auto t = load_theory(c, a1);
      out << to_string(t);
      if (!formula_text.empty()) {
        auto vars = split_vars(vars_text);
        auto f = normalize(parse_formula(formula_text, vars, t.sig));
        out << "formula " << to_string(f, static_cast<int>(vars.size())) << "  depth " << depth(f) << "\n";
        c.rep.verdicts.push_back({{"formula", to_string(f, static_cast<int>(vars.size()))}, {"depth", depth(f)}});
      }
    } else if (sub == prove) {
      auto t = load_theory(c, a1);
      auto s = parse_sequent(a2, t.sig);
      auto v = entails(t, s, b.eo());
      code = code_of(v.kind);
      out << verdict_name(v.kind) << ": " << to_string(s) << "\n";
      if (v.proof) {
        auto chk = check_derivation(t, v.proof);
        out << "proof size " << derivation_size(v.proof) << ", height " << derivation_height(v.proof)
            << (chk.ok ? ", checked" : ", CHECK FAILED: " + chk.reason) << "\n";
        if (emit_proof && !c.json_out) out << to_json(v.proof).dump(2) << "\n";
      }
      if (v.cm) out << "countermodel " << model_text(v.cm->model) << " at " << json(v.cm->assignment).dump() << "\n";
      if (!v.note.empty()) out << v.note << "\n";
      auto j = to_json(v, emit_proof);
      j["sequent"] = to_string(s);
      c.rep.verdicts.push_back(j);
    } else if (sub == refute) {
      auto t = load_theory(c, a1);
      auto s = parse_sequent(a2, t.sig);
      auto r = find_countermodel(t, s, b.model_size);
      json j{{"sequent", to_string(s)}, {"searched_up_to", r.searched_up_to}, {"complete", r.complete}};
      if (r.found) {
        code = 1;
        out << "refuted: countermodel " << model_text(r.found->model) << " at " << json(r.found->assignment).dump() << "\n";
        j["verdict"] = "refuted";
        j["countermodel"] = to_json(*r.found);
      } else {
        code = 2;
        out << "unknown: no countermodel up to size " << r.searched_up_to << "\n";
        j["verdict"] = "unknown";
      }
      c.rep.verdicts.push_back(j);
    } else if (sub == evalc) {
      auto t = load_theory(c, a2);
      auto m = model_from_json(load_json(c, a1), t.sig);
      if (formula_text.empty()) {
        auto v = find_violation(m, t);
        code = v ? 1 : 0;
        if (v)
          out << "fails: axiom " << v->axiom + 1 << " " << to_string(t.axioms[v->axiom]) << " at " << json(v->assignment).dump()
              << "\n";
        else
          out << "holds: model of " << t.name << "\n";
        c.rep.verdicts.push_back({{"model_of", t.name}, {"holds", !v}});
      } else {
        auto vars = split_vars(vars_text);
        auto f = parse_formula(formula_text, vars, t.sig);
        std::vector<int> a;
        for (auto& s : split_vars(assign_text)) a.push_back(std::stoi(s));
        if (a.size() != vars.size()) throw input_error("assignment length differs from the variable list");
        for (int x : a)
          if (x < 0 || x >= m.size) throw input_error("assignment outside the carrier");
        bool v = eval(m, f, a);
        code = v ? 0 : 1;
        out << (v ? "true" : "false") << "\n";
        c.rep.verdicts.push_back({{"formula", to_string(f, static_cast<int>(vars.size()))}, {"value", v}});
      }
    } else if (sub == models) {
      auto t = load_theory(c, a1);
      auto ms = enumerate_models(t, b.model_size);
      std::map<int, int> per;
      for (auto& m : ms) per[m.size]++;
      json j{{"total", ms.size()}};
      for (auto& [s, k] : per) {
        out << "size " << s << ": " << k << "\n";
        j["by_size"][std::to_string(s)] = k;
      }
      out << "total " << ms.size() << "\n";
      if (list) {
        for (auto& m : ms) {
          out << model_text(m) << "\n";
          j["models"].push_back(to_json(m));
        }
      }
      c.rep.verdicts.push_back(j);
    } else if (sub == tsc) {
      auto t = load_theory(c, a1);
      auto o = ts_opts(b);
      o.stability = !no_stability;
      auto ts = compute_typespace(t, o);
      warn_unstable(ts);
      c.rep.stability = stability_json(ts);
      if (mode == "json") {
        std::cout << to_json(ts).dump(2) << "\n";
        return 0;
      }
      auto t1 = t1_report(ts);
      json j;
      for (int n = 0; n <= ts.N; ++n) {
        out << "S_" << n << ": " << ts.size(n) << " points" << (t1[n] ? " (discrete)" : "") << "\n";
        j["points"].push_back(ts.size(n));
        j["t1"].push_back(static_cast<bool>(t1[n]));
      }
      out << "stability: " << (ts.stability.stable ? "stable" : "not certified") << " - " << ts.stability.note << "\n";
      c.rep.verdicts.push_back(j);
    } else if (sub == dual) {
      if (!a1.empty()) {
        auto l = lattice_from_json(load_json(c, a1));
        auto s = spec(l);
        out << "spec: " << s.space.n << " points\n";
        json j{{"points", s.space.n}, {"order", s.space.covers()}};
        for (int x = 0; x < s.space.n; ++x) out << "  point " << x << ": filter " << json(s.filters[x].members()).dump() << "\n";
        if (roundtrip) {
          auto back = k_o(s.space);
          bool iso = find_iso(back.lat.order, l.order).has_value();
          code = iso ? 0 : 1;
          out << "k_o(spec(L)) " << (iso ? "isomorphic to L" : "NOT isomorphic to L") << "\n";
          j["roundtrip"] = iso;
        }
        c.rep.verdicts.push_back(j);
      } else if (!a2.empty()) {
        auto p = poset_from_json(load_json(c, a2));
        auto k = k_o(p);
        out << "k_o: lattice of " << k.lat.n << " up-sets\n";
        json j{{"elements", k.lat.n}};
        if (roundtrip) {
          bool iso = find_iso(spec(k.lat).space, p).has_value();
          code = iso ? 0 : 1;
          out << "spec(k_o(X)) " << (iso ? "isomorphic to X" : "NOT isomorphic to X") << "\n";
          j["roundtrip"] = iso;
        }
        c.rep.verdicts.push_back(j);
      } else
        throw input_error("give --lattice or --poset");
    } else if (sub == cbc) {
      if (!a1.empty()) {
        if (pushout.empty()) throw input_error("--theory needs --pushout");
        auto t = load_theory(c, a1);
        auto po = parse_pushout(pushout);
        auto o = ts_opts(b);
        o.N = std::max(o.N, po.p);
        auto ts = compute_typespace(t, o);
        warn_unstable(ts);
        c.rep.stability = stability_json(ts);
        auto r = check_functor_bc(ts, po);
        code = r.bc.holds && r.error.empty() ? 0 : 1;
        out << "pushout " << pushout << " (corner " << po.p << ")\n";
        out << "maps open: " << (r.error.empty() ? "yes" : r.error) << "\n";
        out << "beck_chevalley: " << (r.bc.holds ? "true" : "false") << "\n";
        out << "universal_map_surjective: " << (r.surj.surjective ? "true" : "false") << " (fiber product "
            << r.surj.fiber_size << ", corner " << ts.size(po.p) << ")\n";
        json j{{"beck_chevalley", r.bc.holds}, {"universal_map_surjective", r.surj.surjective},
               {"fiber_size", r.surj.fiber_size}};
        if (r.surj.witness) {
          auto [x, y] = *r.surj.witness;
          auto& rb = ts.layers[po.n1].real[x].front();
          auto& rc = ts.layers[po.n2].real[y].front();
          auto pb = profile_string(atoms_for(t.sig, po.n1, ts.d), ts.layers[po.n1].points[x]);
          auto pc = profile_string(atoms_for(t.sig, po.n2, ts.d), ts.layers[po.n2].points[y]);
          out << "witness: " << ts.point_name(po.n1, x) << " realized by " << model_text(ts.models[rb.model]) << " at "
              << json(rb.tuple).dump() << "\n         " << ts.point_name(po.n2, y) << " realized by "
              << model_text(ts.models[rc.model]) << " at " << json(rc.tuple).dump() << "\n";
          j["witness"] = {{"left", pb}, {"right", pc}};
        }
        if (r.bc.witness) j["bc_witness"] = r.bc.witness->to_string();
        c.rep.verdicts.push_back(j);
      } else if (!a2.empty()) {
        auto s = square_from_json(load_json(c, a2));
        auto e = square_error(s);
        if (!e.empty()) throw input_error("square: " + e);
        auto bc = check_bc_square(s);
        auto su = universal_map_surjective(s);
        code = bc.holds ? 0 : 1;
        out << "beck_chevalley: " << (bc.holds ? "true" : "false") << "\nuniversal_map_surjective: "
            << (su.surjective ? "true" : "false") << "\n";
        c.rep.verdicts.push_back({{"beck_chevalley", bc.holds}, {"universal_map_surjective", su.surjective}});
      } else if (!a3.empty()) {
        auto p = presentation_from_json(load_json(c, a3));
        auto r = validate_presentation(p);
        code = r.ok ? 0 : 1;
        out << "squares checked " << r.squares << ": " << (r.ok ? "all pass" : "failures") << "\n";
        for (auto& f : r.failures) out << "  " << f << "\n";
        c.rep.verdicts.push_back({{"ok", r.ok}, {"squares", r.squares}, {"failures", r.failures}});
      } else if (!mode.empty()) {
        if (source.empty() || target.empty() || fmap.empty()) throw input_error("--interp needs --source, --target, --f");
        auto s = load_theory(c, source), t = load_theory(c, target);
        auto g = parse_interpretation(slurp(c, mode), s, t);
        auto f = parse_index_map(fmap);
        auto o = ts_opts(b);
        o.N = std::max<int>({static_cast<int>(f.size()), codomain}) * g.k;
        auto big = compute_typespace(t, o);
        o.N = std::max<int>(static_cast<int>(f.size()), codomain);
        auto small = compute_typespace(s, o);
        warn_unstable(big);
        warn_unstable(small);
        auto pm = s_of_interpretation(g, big, small);
        auto w = check_weak_bc(pm, f, codomain), st = check_strict_bc(pm, f, codomain);
        code = w.holds ? 0 : 1;
        out << "weak beck_chevalley: " << (w.holds ? "true" : "false") << "\nstrict beck_chevalley: "
            << (st.holds ? "true" : "false") << "\n";
        if (!st.holds) out << "strict witness: " << st.lhs.to_string() << " vs " << st.rhs.to_string() << "\n";
        c.rep.verdicts.push_back({{"weak", w.holds}, {"strict", st.holds}});
      } else
        throw input_error("give --theory, --square, --functor or --interp");
    } else if (sub == cfr) {
      if (!a1.empty()) {
        auto j = load_json(c, a1);
        auto l = lattice_from_json(j.at("source")), m = lattice_from_json(j.at("target"));
        auto f = j.at("map").get<std::vector<int>>();
        check_hom(l, m, f);
        json r;
        try {
          auto h = left_adjoint(l, m, f);
          auto w = check_frobenius(l, m, f, h);
          code = w ? 1 : 0;
          out << "left adjoint: yes\nfrobenius: " << (w ? "fails" : "holds") << "\n";
          if (w) out << "witness (a, b) = (" << w->first << ", " << w->second << ")\n";
          r = {{"adjoint", true}, {"frobenius", !w}};
        } catch (const lattice_error& e) {
          code = 1;
          out << "left adjoint: no (" << e.what() << ")\n";
          r = {{"adjoint", false}};
        }
        c.rep.verdicts.push_back(r);
      } else if (!a2.empty()) {
        auto j = load_json(c, a2);
        auto x = poset_from_json(j.at("X")), y = poset_from_json(j.at("Y"));
        auto g = j.at("g").get<std::vector<int>>();
        if (static_cast<int>(g.size()) != x.n || !is_monotone(x, y, g)) throw input_error("g is not a monotone map X -> Y");
        bool open = is_open_map(x, y, g);
        auto lx = k_o(x), ly = k_o(y);
        std::vector<int> f;
        for (auto& u : ly.sets) f.push_back(lx.index_of(preimage(g, u)));
        bool frob = false;
        try {
          auto h = left_adjoint(ly.lat, lx.lat, f);
          frob = !check_frobenius(ly.lat, lx.lat, f, h);
        } catch (const lattice_error&) {
        }
        code = open ? 0 : 1;
        out << "open: " << (open ? "yes" : "no") << "\nadjoint with frobenius: " << (frob ? "yes" : "no") << "\n";
        c.rep.verdicts.push_back({{"open", open}, {"adjoint_frobenius", frob}});
      } else
        throw input_error("give --hom or --map");
    } else if (sub == interp) {
      auto s = load_theory(c, source), t = load_theory(c, target);
      if (mode == "compose") {
        if (mid.empty() || a2.empty()) throw input_error("compose needs two files and --mid");
        auto mth = load_theory(c, mid);
        auto g = parse_interpretation(slurp(c, a1), s, mth);
        auto d = parse_interpretation(slurp(c, a2), mth, t);
        auto cmp = compose(d, g);
        out << to_string(cmp);
        c.rep.verdicts.push_back({{"k", cmp.k}, {"text", to_string(cmp)}});
      } else if (mode == "cell") {
        if (a2.empty() || theta.empty()) throw input_error("cell needs two files and --theta");
        auto g1 = parse_interpretation(slurp(c, a1), s, t);
        auto g2 = parse_interpretation(slurp(c, a2), s, t);
        auto vars = split_vars(vars_text);
        if (static_cast<int>(vars.size()) != g1.k + g2.k) throw input_error("--vars must list k + k' variables");
        two_cell cell{&g1, &g2, parse_formula(theta, vars, t.sig)};
        auto r = check_two_cell(cell, b.eo());
        code = r.refuted ? 1 : r.unknown ? 2 : 0;
        json j = json::array();
        for (auto& cr : r.conditions) {
          out << cr.label << ": " << verdict_name(cr.v.kind) << "  " << to_string(cr.s) << "\n";
          j.push_back({{"condition", cr.label}, {"sequent", to_string(cr.s)}, {"verdict", verdict_name(cr.v.kind)}});
        }
        c.rep.verdicts = j;
      } else {
        if (a1.empty()) throw input_error("missing interpretation file");
        auto g = parse_interpretation(slurp(c, a1), s, t);
        if (mode == "apply") {
          auto vars = split_vars(vars_text);
          int n = static_cast<int>(vars.size());
          auto f = parse_formula(formula_text, vars, s.sig);
          auto img = apply(g, f, n);
          out << to_string(img, n * g.k) << "\n";
          c.rep.verdicts.push_back({{"image", to_string(img, n * g.k)}, {"context", n * g.k}});
        } else {
          int bad_models = 0;
          std::string note;
          for (auto& m : enumerate_models(t, b.model_size)) {
            try {
              gamma_star(g, m);
            } catch (const interp_error& e) {
              if (!bad_models++) note = e.what();
            }
          }
          sample_options so;
          so.count = samples;
          so.max_ctx = 2;
          so.depth = b.formula_depth;
          auto fam = standard_family(s.sig, 2, so);
          auto r = check_interpretation(g, fam, b.eo());
          code = bad_models || r.refuted ? 1 : r.unknown ? 2 : 0;
          out << "gamma*: " << (bad_models ? "fails on " + std::to_string(bad_models) + " models: " + note : "defined on every model")
              << "\nsequents preserved: checked " << r.checked << ", proved " << r.proved << ", refuted " << r.refuted
              << ", unknown " << r.unknown << ", skipped " << r.skipped << "\n";
          if (r.first_failure) out << "first failure: " << to_string(*r.first_failure) << " " << r.failure_note << "\n";
          c.rep.verdicts.push_back({{"gamma_star_failures", bad_models},
                                    {"checked", r.checked},
                                    {"proved", r.proved},
                                    {"refuted", r.refuted},
                                    {"unknown", r.unknown}});
        }
      }
    } else if (sub == thf) {
      if (mode == "build") {
        presentation p;
        if (trivial)
          p = trivial_presentation(b.arity);
        else {
          theory t;
          if (!a3.empty())
            t = build_lattice_theory(lattice_from_json(load_json(c, a3)));
          else if (!a2.empty())
            t = load_theory(c, a2);
          else
            throw input_error("build needs --theory, --lattice or --trivial");
          auto ts = std::make_shared<typespace>(compute_typespace(t, ts_opts(b)));
          warn_unstable(*ts);
          p = export_presentation(ts);
        }
        std::cout << to_json(p).dump(2) << "\n";
        return 0;
      }
      presentation p;
      if (!a1.empty())
        p = presentation_from_json(load_json(c, a1));
      else if (!a2.empty()) {
        auto ts = std::make_shared<typespace>(compute_typespace(load_theory(c, a2), ts_opts(b)));
        warn_unstable(*ts);
        c.rep.stability = stability_json(*ts);
        p = export_presentation(ts);
      } else
        throw input_error("give a presentation file or --theory");
      if (mode == "validate") {
        auto r = validate_presentation(p);
        code = r.ok ? 0 : 1;
        out << (r.ok ? "valid" : "invalid") << ": maps " << r.maps << ", composites " << r.composites << ", squares "
            << r.squares << "\n";
        for (auto& f : r.failures) out << "  " << f << "\n";
        c.rep.verdicts.push_back({{"ok", r.ok}, {"failures", r.failures}});
      } else {
        auto r = p.realizer ? roundtrip_functor_atomic(p) : roundtrip_functor(p);
        code = r.ok() ? 0 : 1;
        out << "route " << r.route << ": prime " << r.prime << ", bijection " << r.bijection << ", natural " << r.natural
            << ", realized " << r.realization << ", models " << r.models_ok << "\n";
        for (std::size_t n = 0; n < r.points.size(); ++n)
          out << "  arity " << n << ": " << r.realized[n] << "/" << r.points[n] << " points realized\n";
        for (auto& f : r.failures) out << "  " << f << "\n";
        c.rep.verdicts.push_back({{"route", r.route}, {"ok", r.ok()}, {"points", r.points}, {"realized", r.realized}});
      }
    } else if (sub == rt) {
      auto t = load_theory(c, a1);
      auto ts = std::make_shared<typespace>(compute_typespace(t, ts_opts(b)));
      warn_unstable(*ts);
      c.rep.stability = stability_json(*ts);
      sample_options so;
      so.count = samples;
      so.max_ctx = ts->N;
      so.depth = b.formula_depth;
      auto fam = standard_family(base_signature(*ts), ts->N, so);
      roundtrip_options ro;
      ro.eo = b.eo();
      auto r = roundtrip_theory(ts, fam, ro);
      code = r.refuted || r.open_mismatch || !r.failures.empty() ? 1 : r.unknown ? 2 : 0;
      out << "formulas " << r.formulas << ": opens match " << r.open_match << ", mismatch " << r.open_mismatch
          << "\nequivalences: proved " << r.proved << ", refuted " << r.refuted << ", unknown " << r.unknown
          << " (rechecked " << r.rechecked << ")\npairs " << r.pairs << ": agree " << r.pair_agree << ", unknown "
          << r.pair_unknown << "\n";
      for (auto& f : r.failures) out << "  " << f << "\n";
      c.rep.verdicts.push_back({{"formulas", r.formulas},
                                {"open_mismatch", r.open_mismatch},
                                {"proved", r.proved},
                                {"refuted", r.refuted},
                                {"unknown", r.unknown},
                                {"pairs", r.pairs},
                                {"pair_agree", r.pair_agree}});
    }
  } catch (const syntax_error& e) {
    std::cerr << "input error: line " << e.line << ", column " << e.col << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  }
  c.rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (c.json_out) {
    auto j = c.rep.to_json();
    j["exit_code"] = code;
    std::cout << j.dump(2) << "\n";
  } else
    std::cout << out.str();
  return code;
}
