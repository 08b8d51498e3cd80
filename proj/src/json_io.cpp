#include "coh/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <regex>

namespace coh {

const std::map<std::string, int>& schema_versions() {
  static const std::map<std::string, int> v{{"model", 1},    {"lattice", 1},      {"poset", 1},  {"derivation", 1},
                                            {"typespace", 1}, {"presentation", 1}, {"square", 1}, {"report", 1}};
  return v;
}

json to_json(const finite_model& m) {
  json rels = json::object();
  for (auto& [r, t] : m.rels) rels[r] = m.tuples(r);
  return {{"carrier", m.size}, {"relations", rels}};
}

finite_model model_from_json(const json& j, const signature& sig) {
  try {
    int n = j.at("carrier").get<int>();
    if (n < 0) throw format_error("negative carrier");
    auto m = finite_model::empty_for(sig, n);
    if (j.contains("relations"))
      for (auto& [r, tuples] : j.at("relations").items()) {
        int a = sig.arity(r);
        if (a < 0) throw format_error("unknown relation " + r);
        for (auto& t : tuples) {
          auto args = t.get<std::vector<int>>();
          if (static_cast<int>(args.size()) != a) throw format_error("wrong arity in tuple of " + r);
          for (int x : args)
            if (x < 0 || x >= n) throw format_error("element outside the carrier in " + r);
          m.set(r, args);
        }
      }
    return m;
  } catch (const json::exception& e) {
    throw format_error(std::string("bad model json: ") + e.what());
  }
}

json to_json(const fin_poset& p) { return {{"elements", p.n}, {"leq", p.covers()}}; }

namespace {

std::pair<int, std::vector<std::pair<int, int>>> order_data(const json& j) {
  try {
    int n = j.at("elements").get<int>();
    if (n < 0) throw format_error("negative size");
    std::vector<std::pair<int, int>> le;
    if (j.contains("leq"))
      for (auto& e : j.at("leq")) {
        auto v = e.get<std::vector<int>>();
        if (v.size() != 2 || v[0] < 0 || v[1] < 0 || v[0] >= n || v[1] >= n) throw format_error("bad leq pair");
        le.push_back({v[0], v[1]});
      }
    return {n, le};
  } catch (const json::exception& e) {
    throw format_error(std::string("bad order json: ") + e.what());
  }
}

}  // namespace

fin_poset poset_from_json(const json& j) {
  auto [n, le] = order_data(j);
  try {
    return fin_poset::from_pairs(n, le);
  } catch (const lattice_error& e) {
    throw format_error(e.what());
  }
}

json to_json(const fin_lattice& l) { return to_json(l.order); }

fin_lattice lattice_from_json(const json& j) {
  auto [n, le] = order_data(j);
  try {
    return fin_lattice::from_pairs(n, le);
  } catch (const lattice_error& e) {
    throw format_error(e.what());
  }
}

json to_json(const derivation& d) {
  json kids = json::array();
  for (auto& k : d->kids) kids.push_back(to_json(k));
  return {{"rule", rule_name(d->r)},
          {"conclusion", to_string(d->concl)},
          {"context", d->concl.n},
          {"children", kids},
          {"parameters", d->params}};
}

json to_json(const countermodel& cm) {
  json a = json::array();
  for (int x : cm.assignment) a.push_back(x);
  return {{"model", to_json(cm.model)}, {"assignment", a}};
}

json to_json(const verdict& v, bool with_proof) {
  json j{{"verdict", verdict_name(v.kind)}, {"steps", v.steps}};
  if (!v.note.empty()) j["note"] = v.note;
  if (v.cm) j["countermodel"] = to_json(*v.cm);
  if (v.proof) {
    j["proof_size"] = derivation_size(v.proof);
    j["proof_height"] = derivation_height(v.proof);
    if (with_proof) j["proof"] = to_json(v.proof);
  }
  return j;
}

std::string map_key_text(const std::vector<int>& f, int m) {
  std::string s = std::to_string(f.size()) + "->" + std::to_string(m) + ":[";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i] + 1);
  return s + "]";
}

std::pair<std::vector<int>, int> parse_map_key(const std::string& s) {
  static const std::regex re(R"(\s*(\d+)\s*->\s*(\d+)\s*:\s*(\[[^\]]*\])\s*)");
  std::smatch mt;
  if (!std::regex_match(s, mt, re)) throw format_error("bad map key " + s);
  int n = std::stoi(mt[1]), m = std::stoi(mt[2]);
  std::vector<int> f;
  if (mt[3].str() != "[]") f = parse_index_map(mt[3]);
  if (static_cast<int>(f.size()) != n) throw format_error("map key length differs from its domain: " + s);
  for (int v : f)
    if (v < 0 || v >= m) throw format_error("map key value outside the codomain: " + s);
  return {f, m};
}

json to_json(const typespace& ts) {
  json j;
  j["theory"] = ts.t.name;
  j["arity"] = ts.N;
  j["bounds"] = {{"model_bound", ts.B}, {"depth", ts.d}};
  j["stability"] = {{"run", ts.stability.run}, {"stable", ts.stability.stable}, {"counts", ts.stability.counts},
                    {"note", ts.stability.note}};
  json pts = json::object(), order = json::object(), opens = json::object();
  for (int n = 0; n <= ts.N; ++n) {
    auto& da = atoms_for(ts.t.sig, n, ts.d);
    json ps = json::array();
    for (auto& p : ts.layers[n].points) ps.push_back(profile_string(da, p));
    pts[std::to_string(n)] = ps;
    order[std::to_string(n)] = ts.layers[n].order.covers();
    json o = json::object();
    for (auto& [r, a] : ts.t.sig.rels)
      for (auto& f : all_maps(a, n)) {
        auto phi = mk_atom(r, f);
        o[to_string(phi, n)] = ts.open_of(n, phi).to_string();
      }
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) o[to_string(mk_eq(i, k), n)] = ts.open_of(n, mk_eq(i, k)).to_string();
    opens[std::to_string(n)] = o;
  }
  j["points"] = pts;
  j["order"] = order;
  j["opens"] = opens;
  json maps = json::object();
  for (auto& [key, g] : ts.maps) {
    auto& [m, f] = key;
    maps[map_key_text(f, m)] = g;
  }
  j["maps"] = maps;
  return j;
}

json to_json(const presentation& p) {
  json j;
  j["name"] = p.name;
  j["cutoff"] = p.N;
  json sp = json::object(), maps = json::object();
  for (int n = 0; n <= p.N; ++n) sp[std::to_string(n)] = to_json(p.spaces[n]);
  for (auto& [key, g] : p.pmap) maps[map_key_text(key.second, key.first)] = g;
  j["spaces"] = sp;
  j["maps"] = maps;
  bool small = true;
  for (auto& s : p.spaces) small = small && s.up_sets(65).size() <= 64;
  if (small) {
    std::vector<upset_lattice> ls;
    json lat = json::object(), homs = json::object();
    for (int n = 0; n <= p.N; ++n) {
      ls.push_back(k_o(p.spaces[n]));
      lat[std::to_string(n)] = to_json(ls.back().lat);
    }
    for (auto& [key, g] : p.pmap) {
      auto& [m, f] = key;
      int n = static_cast<int>(f.size());
      std::vector<int> h;
      for (auto& u : ls[n].sets) h.push_back(ls[m].index_of(p.A(f, m, u)));
      homs[map_key_text(f, m)] = h;
    }
    j["lattices"] = lat;
    j["homs"] = homs;
  }
  return j;
}

presentation presentation_from_json(const json& j) {
  presentation p;
  try {
    p.name = j.value("name", std::string("presentation"));
    p.N = j.at("cutoff").get<int>();
    if (p.N < 0 || p.N > 4) throw format_error("cutoff must lie in 0..4");
    if (j.contains("spaces")) {
      for (int n = 0; n <= p.N; ++n) p.spaces.push_back(poset_from_json(j.at("spaces").at(std::to_string(n))));
      for (auto& [k, v] : j.at("maps").items()) {
        auto [f, m] = parse_map_key(k);
        if (m > p.N || static_cast<int>(f.size()) > p.N) throw format_error("map beyond the cutoff: " + k);
        p.pmap[{m, f}] = v.get<std::vector<int>>();
      }
      return p;
    }
    std::vector<fin_lattice> ls;
    std::vector<spectrum> sp;
    for (int n = 0; n <= p.N; ++n) {
      ls.push_back(lattice_from_json(j.at("lattices").at(std::to_string(n))));
      sp.push_back(spec(ls.back()));
      p.spaces.push_back(sp.back().space);
    }
    for (auto& [k, v] : j.at("homs").items()) {
      auto [f, m] = parse_map_key(k);
      int n = static_cast<int>(f.size());
      if (m > p.N || n > p.N) throw format_error("hom beyond the cutoff: " + k);
      auto h = v.get<std::vector<int>>();
      try {
        check_hom(ls[n], ls[m], h);
      } catch (const lattice_error& e) {
        throw format_error("hom " + k + ": " + e.what());
      }
      p.pmap[{m, f}] = dual_hom(ls[n], sp[n], ls[m], sp[m], h);
    }
    return p;
  } catch (const json::exception& e) {
    throw format_error(std::string("bad presentation json: ") + e.what());
  }
}

json to_json(const square& s) {
  return {{"A", to_json(s.a)}, {"B", to_json(s.b)}, {"C", to_json(s.c)}, {"D", to_json(s.d)},
          {"f", s.f},          {"g", s.g},          {"h", s.h},          {"k", s.k}};
}

square square_from_json(const json& j) {
  try {
    square s;
    s.a = poset_from_json(j.at("A"));
    s.b = poset_from_json(j.at("B"));
    s.c = poset_from_json(j.at("C"));
    s.d = poset_from_json(j.at("D"));
    s.f = j.at("f").get<std::vector<int>>();
    s.g = j.at("g").get<std::vector<int>>();
    s.h = j.at("h").get<std::vector<int>>();
    s.k = j.at("k").get<std::vector<int>>();
    return s;
  } catch (const json::exception& e) {
    throw format_error(std::string("bad square json: ") + e.what());
  }
}

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json run_report::to_json() const {
  return {{"command", command}, {"inputs", inputs},       {"bounds", bounds},
          {"verdicts", verdicts}, {"stability", stability}, {"wall_time_ms", wall_ms}};
}

}  // namespace coh
