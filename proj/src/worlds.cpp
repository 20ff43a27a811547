#include "clott/worlds.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace clott {

int TimeObj::at(SemClock c) const {
  auto it = ticks.find(c);
  if (it == ticks.end()) throw WorldError("clock " + clock_name(c) + " not in time object");
  return it->second;
}

SemClock TimeObj::fresh() const {
  SemClock c = 0;
  while (ticks.count(c)) ++c;
  return c;
}

SemClock World::of(const std::string& k) const {
  auto it = f.find(k);
  if (it == f.end()) throw WorldError("clock variable " + k + " has no valuation");
  return it->second;
}

std::set<std::string> World::fiber(SemClock c) const {
  std::set<std::string> out;
  for (auto& [k, v] : f)
    if (v == c) out.insert(k);
  return out;
}

SemClock Morphism::operator()(SemClock c) const {
  auto it = map.find(c);
  if (it == map.end()) throw WorldError("morphism undefined at " + clock_name(c));
  return it->second;
}

bool Morphism::valid() const {
  if (map.size() != src.ticks.size()) return false;
  for (auto& [c, n] : src.ticks) {
    auto it = map.find(c);
    if (it == map.end() || !dst.has(it->second)) return false;
    if (dst.at(it->second) > n) return false;
  }
  return true;
}

Morphism identity(const TimeObj& t) {
  Morphism m{t, t, {}};
  for (auto& [c, _] : t.ticks) m.map[c] = c;
  return m;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism m{f.src, g.dst, {}};
  for (auto& [c, d] : f.map) m.map[c] = g(d);
  return m;
}

bool is_world_morphism(const World& w, const World& w2, const Morphism& m) {
  if (!(m.src == w.t) || !(m.dst == w2.t) || !m.valid()) return false;
  for (auto& [k, c] : w.f) {
    auto it = w2.f.find(k);
    if (it == w2.f.end() || m(c) != it->second) return false;
  }
  return true;
}

World push(const World& w, const Morphism& m) {
  World out{m.dst, w.delta, {}};
  for (auto& [k, c] : w.f) out.f[k] = m(c);
  return out;
}

World tick_dec(const World& w, const std::string& k) {
  SemClock c = w.of(k);
  if (w.t.at(c) == 0) throw WorldError("tick_dec at zero ticks on " + k);
  World out = w;
  out.t.ticks[c] -= 1;
  return out;
}

Advanced advance_world(const World& w, const std::set<std::string>& X,
                       const std::string& k) {
  SemClock c = w.of(k);
  if (!X.count(k)) throw WorldError("advance: clock not in its own subset");
  for (auto& x : X)
    if (w.of(x) != c) throw WorldError("advance: subset not synchronised with " + k);
  SemClock s = w.t.fresh();
  World out = w;
  out.t.ticks[s] = w.t.at(c) + 1;
  for (auto& x : X) out.f[x] = s;
  Morphism chi{out.t, w.t, {}};
  for (auto& [d, _] : w.t.ticks) chi.map[d] = d;
  chi.map[s] = c;
  return {out, chi, s};
}

Morphism s_kappa(const World& w, const std::string& k) {
  SemClock c = w.of(k);
  World dec = tick_dec(w, k);
  Advanced a = advance_world(dec, w.fiber(c), k);
  Morphism m{w.t, a.w.t, {}};
  for (auto& [d, _] : w.t.ticks) m.map[d] = d == c ? a.sharp : d;
  return m;
}

Morphism r_Xkappa(const World& w, const std::set<std::string>& X,
                  const std::string& k) {
  Advanced a = advance_world(w, X, k);
  World src = tick_dec(a.w, k);
  Morphism m{src.t, w.t, {}};
  for (auto& [d, _] : w.t.ticks) m.map[d] = d;
  m.map[a.sharp] = w.of(k);
  return m;
}

Morphism iota_incl(const TimeObj& t, SemClock newClock, int n) {
  if (t.has(newClock)) throw WorldError("iota: clock not fresh");
  Morphism m = identity(t);
  m.dst.ticks[newClock] = n;
  return m;
}

Morphism rename(const TimeObj& t, SemClock a, SemClock b) {
  Morphism m{t, {}, {}};
  for (auto& [c, n] : t.ticks) {
    SemClock d = c == a ? b : c;
    m.map[c] = d;
    m.dst.ticks[d] = n;
  }
  if (m.dst.ticks.size() != t.ticks.size()) throw WorldError("rename: not injective");
  return m;
}

Morphism collapse(const TimeObj& t, SemClock sharp, SemClock target) {
  Morphism m{t, t, {}};
  m.dst.ticks.erase(sharp);
  for (auto& [c, _] : t.ticks) m.map[c] = c == sharp ? target : c;
  return m;
}

World reindex(const World& w, const std::vector<std::string>& delta2,
              const std::map<std::string, std::string>& nu) {
  World out{w.t, delta2, {}};
  for (auto& k : delta2) {
    auto it = nu.find(k);
    if (it == nu.end()) throw WorldError("reindex: clock map undefined at " + k);
    out.f[k] = w.of(it->second);
  }
  return out;
}

std::vector<std::set<std::string>> tick_subsets(const World& w,
                                                const std::string& k) {
  SemClock c = w.of(k);
  std::vector<std::string> others;
  for (auto& x : w.delta)
    if (x != k && w.f.count(x) && w.of(x) == c) others.push_back(x);
  std::vector<std::set<std::string>> out;
  for (size_t mask = 0; mask < (size_t(1) << others.size()); ++mask) {
    std::set<std::string> X{k};
    for (size_t i = 0; i < others.size(); ++i)
      if (mask & (size_t(1) << i)) X.insert(others[i]);
    out.push_back(X);
  }
  return out;
}

namespace {

void set_partitions(size_t n, std::vector<int>& cur, int maxb,
                    std::vector<std::vector<int>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (int b = 0; b <= maxb + 1; ++b) {
    cur.push_back(b);
    set_partitions(n, cur, std::max(maxb, b), out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> partitions(size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  set_partitions(n, cur, -1, out);
  return out;
}

void nondecreasing(int len, int lo, int hi, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if ((int)cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (int v = lo; v <= hi; ++v) {
    cur.push_back(v);
    nondecreasing(len, v, hi, cur, out);
    cur.pop_back();
  }
}

void all_tuples(int len, int hi, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
  if ((int)cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= hi; ++v) {
    cur.push_back(v);
    all_tuples(len, hi, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<TimeObj> enumerate_time_objects(const Truncation& tr) {
  std::vector<TimeObj> out;
  for (int sz = 0; sz <= tr.B; ++sz) {
    std::vector<std::vector<int>> tks;
    std::vector<int> cur;
    nondecreasing(sz, 0, tr.N, cur, tks);
    for (auto& tk : tks) {
      TimeObj t;
      for (int i = 0; i < sz; ++i) t.ticks[i] = tk[i];
      out.push_back(t);
    }
  }
  return out;
}

std::vector<World> enumerate_worlds(const std::vector<std::string>& delta,
                                    const Truncation& tr) {
  std::vector<World> out;
  if (delta.empty()) {
    for (auto& t : enumerate_time_objects(tr)) out.push_back(World{t, {}, {}});
    return out;
  }
  for (auto& part : partitions(delta.size())) {
    int blocks = *std::max_element(part.begin(), part.end()) + 1;
    if (blocks > tr.B) continue;
    std::vector<std::vector<int>> blockTicks;
    std::vector<int> cur;
    all_tuples(blocks, tr.N, cur, blockTicks);
    for (auto& bt : blockTicks) {
      for (int extra = 0; blocks + extra <= tr.B; ++extra) {
        std::vector<std::vector<int>> ets;
        std::vector<int> c2;
        nondecreasing(extra, 0, tr.N, c2, ets);
        for (auto& et : ets) {
          World w;
          w.delta = delta;
          for (int b = 0; b < blocks; ++b) w.t.ticks[b] = bt[b];
          for (int e = 0; e < extra; ++e) w.t.ticks[blocks + e] = et[e];
          for (size_t i = 0; i < delta.size(); ++i) w.f[delta[i]] = part[i];
          out.push_back(w);
        }
      }
    }
  }
  return out;
}

World canonicalize(const World& w) {
  std::map<SemClock, SemClock> ren;
  SemClock next = 0;
  for (auto& k : w.delta) {
    SemClock c = w.of(k);
    if (!ren.count(c)) ren[c] = next++;
  }
  std::vector<std::pair<int, SemClock>> rest;
  for (auto& [c, n] : w.t.ticks)
    if (!ren.count(c)) rest.push_back({n, c});
  std::sort(rest.begin(), rest.end());
  for (auto& [n, c] : rest) ren[c] = next++;
  World out{{}, w.delta, {}};
  for (auto& [c, n] : w.t.ticks) out.t.ticks[ren[c]] = n;
  for (auto& [k, c] : w.f) out.f[k] = ren[c];
  return out;
}

std::vector<Morphism> enumerate_morphisms(const TimeObj& a, const TimeObj& b) {
  std::vector<SemClock> src;
  for (auto& [c, _] : a.ticks) src.push_back(c);
  std::vector<Morphism> out;
  Morphism m{a, b, {}};
  std::function<void(size_t)> go = [&](size_t i) {
    if (i == src.size()) {
      out.push_back(m);
      return;
    }
    for (auto& [d, n] : b.ticks) {
      if (n > a.at(src[i])) continue;
      m.map[src[i]] = d;
      go(i + 1);
    }
    m.map.erase(src[i]);
  };
  go(0);
  return out;
}

std::vector<Morphism> enumerate_morphisms(const World& w, const World& w2) {
  std::vector<Morphism> out;
  for (auto& m : enumerate_morphisms(w.t, w2.t))
    if (is_world_morphism(w, w2, m)) out.push_back(m);
  return out;
}

std::vector<Morphism> quotient_probes(const TimeObj& t, size_t cap) {
  std::vector<SemClock> cs;
  for (auto& [c, _] : t.ticks) cs.push_back(c);
  std::vector<Morphism> all{identity(t)};
  for (auto& part : partitions(cs.size())) {
    int blocks = cs.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1;
    std::vector<int> bound(blocks, 1 << 20);
    for (size_t i = 0; i < cs.size(); ++i)
      bound[part[i]] = std::min(bound[part[i]], t.at(cs[i]));
    std::vector<int> tk(blocks, 0);
    std::function<void(int)> go = [&](int b) {
      if (b == blocks) {
        Morphism m{t, {}, {}};
        for (int j = 0; j < blocks; ++j) m.dst.ticks[j] = tk[j];
        for (size_t i = 0; i < cs.size(); ++i) m.map[cs[i]] = part[i];
        if (!(m.dst == t && m.map == identity(t).map)) all.push_back(m);
        return;
      }
      for (int v = 0; v <= bound[b]; ++v) {
        tk[b] = v;
        go(b + 1);
      }
    };
    go(0);
  }
  if (all.size() <= cap) return all;
  std::vector<Morphism> out{all[0]};
  double stride = double(all.size() - 1) / double(cap - 1);
  for (size_t i = 1; i < cap; ++i) out.push_back(all[size_t(i * stride)]);
  return out;
}

std::string clock_name(SemClock c) { return "l" + std::to_string(c); }

SemClock parse_clock(const std::string& s) {
  if (s.size() < 2 || s[0] != 'l') throw WorldError("bad semantic clock name: " + s);
  size_t pos = 0;
  int v = std::stoi(s.substr(1), &pos);
  if (pos + 1 != s.size() || v < 0) throw WorldError("bad semantic clock name: " + s);
  return v;
}

json to_json(const TimeObj& t) {
  json j = json::object();
  for (auto& [c, n] : t.ticks) j[clock_name(c)] = n;
  return j;
}

json to_json(const World& w) {
  json v = json::object();
  for (auto& [k, c] : w.f) v[k] = clock_name(c);
  return {{"clocks", to_json(w.t)}, {"valuation", v}};
}

json to_json(const Morphism& m) {
  json j = json::object();
  for (auto& [a, b] : m.map) j[clock_name(a)] = clock_name(b);
  return {{"map", j}};
}

World world_from_json(const json& j, const std::vector<std::string>& delta) {
  World w;
  w.delta = delta;
  if (!j.is_object() || !j.contains("clocks")) throw WorldError("world json needs \"clocks\"");
  for (auto& [k, v] : j["clocks"].items()) {
    if (!v.is_number_integer() || v.get<int>() < 0)
      throw WorldError("tick count for " + k + " must be a natural number");
    w.t.ticks[parse_clock(k)] = v.get<int>();
  }
  json val = j.value("valuation", json::object());
  for (auto& [k, v] : val.items()) {
    SemClock c = parse_clock(v.get<std::string>());
    if (!w.t.has(c)) throw WorldError("valuation of " + k + " outside the clock set");
    w.f[k] = c;
  }
  for (auto& k : delta)
    if (!w.f.count(k)) throw WorldError("no valuation for clock " + k);
  for (auto& [k, _] : w.f)
    if (std::find(delta.begin(), delta.end(), k) == delta.end())
      throw WorldError("valuation names unknown clock " + k);
  return w;
}

Morphism morphism_from_json(const json& j, const TimeObj& src,
                            const TimeObj& dst) {
  Morphism m{src, dst, {}};
  for (auto& [k, v] : j.at("map").items()) m.map[parse_clock(k)] = parse_clock(v.get<std::string>());
  if (!m.valid()) throw WorldError("morphism violates the tick bound");
  return m;
}

std::string show(const World& w) { return to_json(w).dump(); }

}  // namespace clott
