#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "burnlab/presentation.hpp"

namespace burnlab {

// ---- the file format ------------------------------------------------------------

struct DiagramEdge {
  long id = 0, from = 0, to = 0;
  Letter label;
  long inverse_id = 0;
};

struct DiagramFace {
  long id = 0;
  std::vector<long> boundary;
  std::string role = "cell";  // "cell" or "outer"
  std::optional<unsigned> rank;
};

struct Diagram {
  std::string topology = "circular";  // or "annular"
  std::vector<long> vertices;
  std::vector<DiagramEdge> edges;
  std::vector<DiagramFace> faces;
  std::vector<std::vector<long>> contours;
};

inline ojson to_json(const Diagram& d) {
  ojson edges = ojson::array(), faces = ojson::array(), contours = ojson::array();
  for (const auto& e : d.edges)
    edges.push_back(ojson{{"id", e.id}, {"from", e.from}, {"to", e.to}, {"label", letter_name(e.label)}, {"inverse_id", e.inverse_id}});
  for (const auto& f : d.faces) {
    ojson o{{"id", f.id}, {"boundary", f.boundary}, {"role", f.role}};
    if (f.rank) o["rank"] = *f.rank;
    faces.push_back(o);
  }
  for (const auto& c : d.contours) contours.push_back(c);
  return ojson{{"topology", d.topology}, {"vertices", d.vertices}, {"edges", edges}, {"faces", faces}, {"contours", contours}};
}

inline Diagram diagram_from_json(const nlohmann::json& j, const Alphabet& alpha) {
  try {
    Diagram d;
    d.topology = j.at("topology").get<std::string>();
    if (d.topology != "circular" && d.topology != "annular") throw InputError("diagram topology must be circular or annular");
    d.vertices = j.at("vertices").get<std::vector<long>>();
    for (const auto& e : j.at("edges")) {
      DiagramEdge x;
      x.id = e.at("id").get<long>();
      x.from = e.at("from").get<long>();
      x.to = e.at("to").get<long>();
      LetterVec l = parse_letters(e.at("label").get<std::string>(), alpha);
      if (l.size() != 1) throw InputError("edge " + std::to_string(x.id) + ": label must be one letter");
      x.label = l[0];
      x.inverse_id = e.at("inverse_id").get<long>();
      d.edges.push_back(x);
    }
    for (const auto& f : j.at("faces")) {
      DiagramFace x;
      x.id = f.at("id").get<long>();
      x.boundary = f.at("boundary").get<std::vector<long>>();
      x.role = f.at("role").get<std::string>();
      if (x.role != "cell" && x.role != "outer") throw InputError("face " + std::to_string(x.id) + ": role must be cell or outer");
      if (f.contains("rank")) x.rank = f.at("rank").get<unsigned>();
      d.faces.push_back(x);
    }
    for (const auto& c : j.at("contours")) d.contours.push_back(c.get<std::vector<long>>());
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("diagram file: ") + e.what());
  }
}

// Incremental construction with sequential ids.
class DiagramBuilder {
 public:
  explicit DiagramBuilder(std::string topology = "circular") { d_.topology = std::move(topology); }
  long vertex() {
    d_.vertices.push_back(static_cast<long>(d_.vertices.size()));
    return d_.vertices.back();
  }
  // returns the id of the edge u -> v; its inverse gets id + 1
  long edge(long u, long v, Letter l) {
    long id = static_cast<long>(d_.edges.size());
    d_.edges.push_back({id, u, v, l, id + 1});
    d_.edges.push_back({id + 1, v, u, l.inverse(), id});
    return id;
  }
  // edges along a path of letters from u; the last vertex is `end` if given
  std::vector<long> path(long u, const LetterVec& w, std::optional<long> end = std::nullopt) {
    std::vector<long> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      long v = i + 1 == w.size() && end ? *end : vertex();
      out.push_back(edge(u, v, w[i]));
      u = v;
    }
    return out;
  }
  static long inv(long e) { return e ^ 1; }
  static std::vector<long> inverse_path(const std::vector<long>& p) {
    std::vector<long> out;
    for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(inv(*it));
    return out;
  }
  long face(std::vector<long> boundary, std::optional<unsigned> rank = std::nullopt) {
    long id = static_cast<long>(d_.faces.size());
    d_.faces.push_back({id, std::move(boundary), "cell", rank});
    return id;
  }
  // an outer face and the contour running around it
  long outer(std::vector<long> boundary) {
    long id = static_cast<long>(d_.faces.size());
    d_.contours.push_back(inverse_path(boundary));
    d_.faces.push_back({id, std::move(boundary), "outer", std::nullopt});
    return id;
  }
  Diagram& get() { return d_; }

 private:
  Diagram d_;
};

// ---- validation -------------------------------------------------------------------

struct DiagramIssue {
  std::string code;
  std::string message;
};

// Dense view of a structurally valid diagram. Edge indices are darts.
struct DiagramIndex {
  std::size_t V = 0, E = 0, F = 0;
  std::vector<std::size_t> from, to, inv, face_of;
  std::vector<Letter> label;
  std::vector<std::vector<std::size_t>> face;  // boundary darts
  std::vector<bool> outer;
  std::vector<unsigned> rank;                  // per face, 0 for outer faces
  std::vector<long> relator;                   // per face, -1 for outer faces
  std::vector<std::vector<std::size_t>> contour;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj;  // vertex -> (neighbour, dart)

  LetterVec face_label(std::size_t f) const {
    LetterVec out;
    for (auto d : face[f]) out.push_back(label[d]);
    return out;
  }
  LetterVec path_label(const std::vector<std::size_t>& p) const {
    LetterVec out;
    for (auto d : p) out.push_back(label[d]);
    return out;
  }
  std::vector<std::size_t> cells() const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < F; ++f)
      if (!outer[f]) out.push_back(f);
    return out;
  }
  // Undirected graph distance between two vertices, capped at `cap + 1`.
  std::size_t distance(std::size_t u, std::size_t v, std::size_t cap) const {
    if (u == v) return 0;
    std::vector<std::size_t> dist(V, cap + 1);
    std::deque<std::size_t> q{u};
    dist[u] = 0;
    while (!q.empty()) {
      auto x = q.front();
      q.pop_front();
      if (dist[x] >= cap) continue;
      for (auto [y, e] : adj[x])
        if (dist[y] > dist[x] + 1) {
          dist[y] = dist[x] + 1;
          if (y == v) return dist[y];
          q.push_back(y);
        }
    }
    return dist[v];
  }
};

struct ValidationReport {
  bool ok = false;
  std::vector<DiagramIssue> errors;
  std::shared_ptr<const DiagramIndex> index;
  unsigned rank = 0;  // r(Delta)
  long euler = 0;     // V - E + F over all faces
  long euler_cells = 0;
  std::size_t cell_count = 0;
};

struct ValidateOptions {
  bool allow_zero_cells = false;
};

// Matches a cyclic word against relators up to rotation and inversion.
inline std::optional<std::size_t> match_relator(const LetterVec& w, const RelatorSet& rels) {
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const auto& r = rels[i];
    if (r.length() != w.size() || !rels.expandable(i)) continue;
    for (int sign : {1, -1}) {
      LetterVec e = r.expand(sign);
      LetterVec doubled = e;
      doubled.insert(doubled.end(), e.begin(), e.end());
      if (std::search(doubled.begin(), doubled.end(), w.begin(), w.end()) != doubled.end()) return i;
    }
  }
  return std::nullopt;
}

inline LetterVec cyclically_reduce(const LetterVec& w) {
  Word r = Word::reduce(w);
  Word c = cyclic_core(r);
  return c.to_vector();
}

inline ValidationReport validate_diagram(const Diagram& d, const RelatorSet& rels, ValidateOptions opt = {}) {
  ValidationReport rep;
  auto fail = [&](std::string code, std::string msg) { rep.errors.push_back({std::move(code), std::move(msg)}); };
  auto ix = std::make_shared<DiagramIndex>();
  std::unordered_map<long, std::size_t> vid, eid, fid;
  for (long v : d.vertices)
    if (!vid.emplace(v, vid.size()).second) fail("duplicate-id", "vertex " + std::to_string(v) + " repeated");
  for (const auto& e : d.edges)
    if (!eid.emplace(e.id, eid.size()).second) fail("duplicate-id", "edge " + std::to_string(e.id) + " repeated");
  for (const auto& f : d.faces)
    if (!fid.emplace(f.id, fid.size()).second) fail("duplicate-id", "face " + std::to_string(f.id) + " repeated");
  if (!rep.errors.empty()) return rep;
  ix->V = d.vertices.size();
  ix->E = d.edges.size();
  ix->F = d.faces.size();
  ix->from.resize(ix->E);
  ix->to.resize(ix->E);
  ix->inv.resize(ix->E);
  ix->label.resize(ix->E);
  for (std::size_t i = 0; i < ix->E; ++i) {
    const auto& e = d.edges[i];
    auto f = vid.find(e.from), t = vid.find(e.to), v = eid.find(e.inverse_id);
    if (f == vid.end() || t == vid.end()) {
      fail("bad-edge", "edge " + std::to_string(e.id) + " has an unknown endpoint");
      continue;
    }
    if (v == eid.end()) {
      fail("inverse-mismatch", "edge " + std::to_string(e.id) + " has an unknown inverse");
      continue;
    }
    if (!rels.alphabet().contains(e.label)) fail("label", "edge " + std::to_string(e.id) + " label outside the alphabet");
    ix->from[i] = f->second;
    ix->to[i] = t->second;
    ix->inv[i] = v->second;
    ix->label[i] = e.label;
  }
  if (!rep.errors.empty()) return rep;
  for (std::size_t i = 0; i < ix->E; ++i) {
    const std::size_t j = ix->inv[i];
    if (j == i || ix->inv[j] != i || ix->from[j] != ix->to[i] || ix->to[j] != ix->from[i] || ix->label[j] != ix->label[i].inverse())
      fail("inverse-mismatch", "edge " + std::to_string(d.edges[i].id) + " and its inverse disagree");
  }
  if (!rep.errors.empty()) return rep;

  ix->face_of.assign(ix->E, SIZE_MAX);
  ix->face.resize(ix->F);
  ix->outer.resize(ix->F);
  std::size_t outer_count = 0;
  for (std::size_t f = 0; f < ix->F; ++f) {
    const auto& face = d.faces[f];
    ix->outer[f] = face.role == "outer";
    outer_count += ix->outer[f];
    for (long id : face.boundary) {
      auto it = eid.find(id);
      if (it == eid.end()) {
        fail("open-face", "face " + std::to_string(face.id) + " uses unknown edge " + std::to_string(id));
        continue;
      }
      if (ix->face_of[it->second] != SIZE_MAX) fail("edge-face-count", "edge " + std::to_string(id) + " lies on two face boundaries");
      ix->face_of[it->second] = f;
      ix->face[f].push_back(it->second);
    }
    const auto& b = ix->face[f];
    if (b.empty() && !(ix->outer[f] && ix->E == 0)) fail("open-face", "face " + std::to_string(face.id) + " has an empty boundary");
    for (std::size_t i = 0; i < b.size(); ++i)
      if (ix->to[b[i]] != ix->from[b[(i + 1) % b.size()]]) {
        fail("open-face", "face " + std::to_string(face.id) + " boundary is not a closed path");
        break;
      }
  }
  for (std::size_t i = 0; i < ix->E; ++i)
    if (ix->face_of[i] == SIZE_MAX) fail("edge-face-count", "edge " + std::to_string(d.edges[i].id) + " lies on no face");
  const std::size_t want_outer = d.topology == "annular" ? 2 : 1;
  if (outer_count != want_outer || d.contours.size() != want_outer)
    fail("topology", d.topology + " diagram needs " + std::to_string(want_outer) + " outer face(s) and contour(s)");
  if (!rep.errors.empty()) return rep;

  // contours: each is the reversed inverse of an outer face boundary
  std::vector<bool> used(ix->F, false);
  for (const auto& c : d.contours) {
    std::vector<std::size_t> p;
    for (long id : c) {
      auto it = eid.find(id);
      if (it == eid.end()) {
        fail("contour", "contour uses unknown edge " + std::to_string(id));
        return rep;
      }
      p.push_back(it->second);
    }
    std::vector<std::size_t> rev;
    for (auto it = p.rbegin(); it != p.rend(); ++it) rev.push_back(ix->inv[*it]);
    bool matched = false;
    for (std::size_t f = 0; f < ix->F && !matched; ++f) {
      if (!ix->outer[f] || used[f] || ix->face[f].size() != rev.size()) continue;
      if (rev.empty()) {
        matched = used[f] = true;
        break;
      }
      auto doubled = ix->face[f];
      doubled.insert(doubled.end(), ix->face[f].begin(), ix->face[f].end());
      if (std::search(doubled.begin(), doubled.end(), rev.begin(), rev.end()) != doubled.end()) matched = used[f] = true;
    }
    if (!matched) fail("contour", "a contour does not run around an outer face");
    ix->contour.push_back(std::move(p));
  }

  // connectivity, vertex links and Euler characteristic
  ix->adj.assign(ix->V, {});
  for (std::size_t e = 0; e < ix->E; ++e) ix->adj[ix->from[e]].push_back({ix->to[e], e});
  {
    std::vector<bool> seen(ix->V, false);
    std::deque<std::size_t> q{0};
    if (ix->V) seen[0] = true;
    std::size_t n = ix->V ? 1 : 0;
    while (!q.empty()) {
      auto x = q.front();
      q.pop_front();
      for (auto [y, e] : ix->adj[x])
        if (!seen[y]) {
          seen[y] = true;
          ++n;
          q.push_back(y);
        }
    }
    if (n != ix->V) fail("disconnected", "diagram is not connected");
  }
  {
    // successor of an incoming dart around its head vertex
    std::vector<std::size_t> next_in(ix->E);
    for (std::size_t f = 0; f < ix->F; ++f) {
      const auto& b = ix->face[f];
      for (std::size_t i = 0; i < b.size(); ++i) next_in[b[i]] = ix->inv[b[(i + 1) % b.size()]];
    }
    std::vector<bool> seen(ix->E, false);
    std::size_t cycles = 0;
    for (std::size_t e = 0; e < ix->E; ++e) {
      if (seen[e]) continue;
      ++cycles;
      for (std::size_t x = e; !seen[x]; x = next_in[x]) seen[x] = true;
    }
    std::size_t isolated = 0;
    for (std::size_t v = 0; v < ix->V; ++v) isolated += ix->adj[v].empty();
    if (cycles + isolated != ix->V) fail("vertex-link", "some vertex is pinched (its corners form more than one cycle)");
  }
  rep.euler = static_cast<long>(ix->V) - static_cast<long>(ix->E / 2) + static_cast<long>(ix->F);
  rep.euler_cells = rep.euler - static_cast<long>(outer_count);
  if (rep.euler != 2) fail("euler", "V - E + F = " + std::to_string(rep.euler) + ", expected 2");

  // cells
  ix->rank.assign(ix->F, 0);
  ix->relator.assign(ix->F, -1);
  for (std::size_t f = 0; f < ix->F; ++f) {
    if (ix->outer[f]) continue;
    ++rep.cell_count;
    LetterVec c = cyclically_reduce(ix->face_label(f));
    const std::string name = "face " + std::to_string(d.faces[f].id);
    if (c.empty()) {
      if (!opt.allow_zero_cells) fail("rank-zero-cell", name + " has a freely trivial label");
      continue;
    }
    auto m = match_relator(c, rels);
    if (!m) {
      fail("non-relator", name + " label " + format_letters(ix->face_label(f)) + " is not a relator");
      continue;
    }
    ix->relator[f] = static_cast<long>(*m);
    ix->rank[f] = rels[*m].rank;
    if (d.faces[f].rank && *d.faces[f].rank != ix->rank[f])
      fail("rank-mismatch", name + " declares rank " + std::to_string(*d.faces[f].rank) + " but its relator has rank " + std::to_string(ix->rank[f]));
    rep.rank = std::max(rep.rank, ix->rank[f]);
  }
  rep.ok = rep.errors.empty();
  rep.index = std::move(ix);
  return rep;
}

inline LetterVec contour_label(const ValidationReport& r, std::size_t c = 0) { return r.index->path_label(r.index->contour.at(c)); }

// ---- contiguity -----------------------------------------------------------------------

struct ContourSection {
  std::size_t contour = 0;
  std::size_t start = 0;
  std::size_t length = 0;  // equal to the contour length for a cyclic section
};

struct ContiguityTarget {
  std::optional<std::size_t> cell;  // face index
  ContourSection section;
};

struct ContiguityRecord {
  std::size_t cell = 0;  // pi
  ContiguityTarget target;
  std::size_t q1_start = 0, q1_length = 0;  // along the boundary of pi
  std::size_t q2_start = 0, q2_length = 0;  // along the target
  std::size_t s1_length = 0, s2_length = 0;
  Rational degree;
  unsigned inner_rank = 0;
  std::vector<std::size_t> inner_cells;
};

struct ContiguityOptions {
  std::size_t side_cap = 1;
};

inline std::size_t default_side_cap(const Params& p, unsigned rank) {
  Rational x = p.zeta * Rational(p.k) * Rational(static_cast<std::int64_t>(rank));
  return std::max<std::size_t>(1, static_cast<std::size_t>(x.numerator() / x.denominator()));
}

namespace detail {

struct Arc {
  std::size_t start, length;
};

inline bool arc_contains(const Arc& big, const Arc& small, std::size_t n, bool cyclic) {
  if (small.length > big.length) return false;
  if (big.length == n && cyclic) return true;
  std::size_t off = cyclic ? (small.start + n - big.start) % n : small.start - big.start;
  if (!cyclic && small.start < big.start) return false;
  return off + small.length <= big.length;
}

// Shortest path avoiding `banned` edges (both darts), if within cap.
inline std::optional<std::vector<std::size_t>> side_path(const DiagramIndex& ix, std::size_t u, std::size_t v, std::size_t cap, const std::vector<bool>& banned) {
  if (u == v) return std::vector<std::size_t>{};
  std::vector<std::size_t> dist(ix.V, SIZE_MAX), via(ix.V, SIZE_MAX);
  std::deque<std::size_t> q{u};
  dist[u] = 0;
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    if (dist[x] >= cap) continue;
    for (auto [y, e] : ix.adj[x]) {
      if (banned[e] || dist[y] != SIZE_MAX) continue;
      dist[y] = dist[x] + 1;
      via[y] = e;
      if (y == v) {
        std::vector<std::size_t> p;
        for (std::size_t z = v; z != u; z = ix.from[via[z]]) p.push_back(via[z]);
        std::reverse(p.begin(), p.end());
        return p;
      }
      q.push_back(y);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Contiguity submaps of cell pi to a cell or contour section, bounded by
// s1 q1 s2 q2 with short side arcs. Only maximal records are kept.
inline std::vector<ContiguityRecord> find_contiguity(const DiagramIndex& ix, std::size_t pi, const ContiguityTarget& target, const ContiguityOptions& opt) {
  std::vector<ContiguityRecord> out;
  const auto& B = ix.face.at(pi);
  const std::size_t n = B.size();
  std::vector<std::size_t> T;
  bool target_cyclic = true;
  if (target.cell) {
    if (*target.cell == pi || ix.outer.at(*target.cell)) return out;
    T = ix.face[*target.cell];
  } else {
    const auto& c = ix.contour.at(target.section.contour);
    if (target.section.length == 0 || c.empty()) return out;
    target_cyclic = target.section.length >= c.size();
    for (std::size_t i = 0; i < std::min(target.section.length, c.size()); ++i) T.push_back(c[(target.section.start + i) % c.size()]);
  }
  const std::size_t m = T.size();
  if (n == 0 || m == 0) return out;
  const std::size_t cap = opt.side_cap;
  auto arcs = [](std::size_t len, bool cyclic) {
    std::vector<detail::Arc> a;
    for (std::size_t l = 1; l <= len; ++l)
      for (std::size_t s = 0; s < (l == len && cyclic ? 1 : cyclic ? len : len - l + 1); ++s) a.push_back({s, l});
    return a;
  };
  const auto A1 = arcs(n, true), A2 = arcs(m, target_cyclic);
  for (const auto& a : A1) {
    const std::size_t u1 = ix.from[B[a.start]], v1 = ix.to[B[(a.start + a.length - 1) % n]];
    for (const auto& b : A2) {
      const std::size_t u2 = ix.from[T[b.start]], v2 = ix.to[T[(b.start + b.length - 1) % m]];
      // endpoints paired so that the submap lies to the right of q1
      const std::size_t s1_from = u1, s1_to = target.cell ? v2 : u2;
      const std::size_t s2_from = target.cell ? u2 : v2, s2_to = v1;
      if (ix.distance(s1_from, s1_to, cap) > cap || ix.distance(s2_from, s2_to, cap) > cap) continue;
      std::vector<bool> banned(ix.E, false);
      std::vector<std::size_t> q1, q2;
      for (std::size_t i = 0; i < a.length; ++i) q1.push_back(B[(a.start + i) % n]);
      for (std::size_t i = 0; i < b.length; ++i) q2.push_back(T[(b.start + i) % m]);
      for (auto e : q1) banned[e] = banned[ix.inv[e]] = true;
      for (auto e : q2) banned[e] = banned[ix.inv[e]] = true;
      auto s1 = detail::side_path(ix, s1_from, s1_to, cap, banned);
      auto s2 = detail::side_path(ix, s2_from, s2_to, cap, banned);
      if (!s1 || !s2) continue;
      // darts of the closed path with the submap on their left
      std::vector<std::size_t> ring;
      for (auto it = q1.rbegin(); it != q1.rend(); ++it) ring.push_back(ix.inv[*it]);
      ring.insert(ring.end(), s1->begin(), s1->end());
      if (target.cell) {
        for (auto it = q2.rbegin(); it != q2.rend(); ++it) ring.push_back(ix.inv[*it]);
      } else {
        ring.insert(ring.end(), q2.begin(), q2.end());
      }
      ring.insert(ring.end(), s2->begin(), s2->end());
      std::vector<bool> on_ring(ix.E, false);
      for (auto e : ring) on_ring[e] = true;
      std::vector<bool> in(ix.F, false);
      std::deque<std::size_t> work;
      for (auto e : ring)
        if (!on_ring[ix.inv[e]] && !in[ix.face_of[e]]) {
          in[ix.face_of[e]] = true;
          work.push_back(ix.face_of[e]);
        }
      bool ok = true;
      while (!work.empty() && ok) {
        auto f = work.front();
        work.pop_front();
        if (ix.outer[f] || f == pi || (target.cell && f == *target.cell)) {
          ok = false;
          break;
        }
        for (auto e : ix.face[f]) {
          if (on_ring[e]) continue;
          auto g = ix.face_of[ix.inv[e]];
          if (!in[g]) {
            in[g] = true;
            work.push_back(g);
          }
        }
      }
      if (!ok) continue;
      ContiguityRecord r;
      r.cell = pi;
      r.target = target;
      r.q1_start = a.start;
      r.q1_length = a.length;
      r.q2_start = b.start;
      r.q2_length = b.length;
      r.s1_length = s1->size();
      r.s2_length = s2->size();
      r.degree = Rational(static_cast<std::int64_t>(a.length), static_cast<std::int64_t>(n));
      for (std::size_t f = 0; f < ix.F; ++f)
        if (in[f]) {
          r.inner_cells.push_back(f);
          r.inner_rank = std::max(r.inner_rank, ix.rank[f]);
        }
      out.push_back(std::move(r));
    }
  }
  std::vector<ContiguityRecord> maximal;
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < out.size() && !dominated; ++j) {
      if (i == j) continue;
      const auto &x = out[i], &y = out[j];
      bool sub = detail::arc_contains({y.q1_start, y.q1_length}, {x.q1_start, x.q1_length}, n, true) &&
                 detail::arc_contains({y.q2_start, y.q2_length}, {x.q2_start, x.q2_length}, m, target_cyclic);
      bool same = x.q1_length == y.q1_length && x.q2_length == y.q2_length;
      dominated = sub && (!same || j < i);
    }
    if (!dominated) maximal.push_back(out[i]);
  }
  return maximal;
}

// ---- geodesy and Condition A --------------------------------------------------------------

enum class Check { pass, fail, unknown };

inline const char* to_string(Check c) {
  switch (c) {
    case Check::pass: return "pass";
    case Check::fail: return "fail";
    default: return "unknown";
  }
}

inline Check combine(Check a, Check b) {
  if (a == Check::fail || b == Check::fail) return Check::fail;
  if (a == Check::unknown || b == Check::unknown) return Check::unknown;
  return Check::pass;
}

struct Finding {
  std::string condition;
  Check status = Check::pass;
  std::string detail;
};

// A path is geodesic when neither the diagram nor the group has a shorter
// route between its ends.
inline Finding path_geodesic(const DiagramIndex& ix, const std::vector<std::size_t>& p, const Oracle& o, const Budget& b, std::string cond) {
  Finding f{std::move(cond), Check::pass, ""};
  if (p.empty()) return f;
  const std::size_t len = p.size();
  const LetterVec lab = ix.path_label(p);
  std::size_t dd = ix.distance(ix.from[p.front()], ix.to[p.back()], len);
  if (dd < len) {
    f.status = Check::fail;
    f.detail = format_letters(lab) + ": ends are " + std::to_string(dd) + " apart in the diagram";
    return f;
  }
  Word w = Word::reduce(lab);
  if (w.size() < len) {
    f.status = Check::fail;
    f.detail = format_letters(lab) + " is not freely reduced";
    return f;
  }
  NormBound nb = o.norm(w, b);
  if (nb.upper < len) {
    f.status = Check::fail;
    f.detail = format_letters(lab) + " equals " + format_word(nb.representative) + " in the group";
  } else if (nb.lower < len) {
    f.status = Check::unknown;
    f.detail = format_letters(lab) + ": norm only known to lie in [" + std::to_string(nb.lower) + ", " + std::to_string(nb.upper) + "]";
  }
  return f;
}

struct ConditionAReport {
  Check A1 = Check::pass, A2 = Check::pass, A3 = Check::pass;
  std::vector<Finding> findings;  // violations and unknowns only
  Check overall() const { return combine(combine(A1, A2), A3); }
};

struct CheckContext {
  const Oracle* oracle = nullptr;  // for geodesy at r(Delta)
  Params params;
  Budget budget;
  ContiguityOptions contiguity;
};

inline ConditionAReport check_condition_A(const DiagramIndex& ix, const CheckContext& ctx) {
  ConditionAReport rep;
  auto note = [&](Check& slot, Finding f) {
    slot = combine(slot, f.status);
    if (f.status != Check::pass) rep.findings.push_back(std::move(f));
  };
  for (auto c : ix.cells()) {
    const auto& b = ix.face[c];
    const unsigned j = ix.rank[c];
    const std::string name = "cell " + std::to_string(c);
    LetterVec lab = ix.face_label(c);
    bool reduced = true;
    for (std::size_t i = 0; i < lab.size(); ++i) reduced = reduced && lab[i] != lab[(i + 1) % lab.size()].inverse();
    if (lab.size() == 1) reduced = true;
    if (!reduced) note(rep.A1, {"A1", Check::fail, name + ": contour " + format_letters(lab) + " is not cyclically reduced"});
    if (b.size() < static_cast<std::size_t>(ctx.params.k) * j)
      note(rep.A1, {"A1", Check::fail, name + ": |contour| = " + std::to_string(b.size()) + " < k*rank = " + std::to_string(ctx.params.k * j)});
    if (ctx.oracle) {
      const std::size_t span = std::min<std::size_t>(std::max<unsigned>(j, 2), b.size());
      for (std::size_t len = 1; len <= span; ++len)
        for (std::size_t s = 0; s < (len == b.size() ? 1 : b.size()); ++s) {
          std::vector<std::size_t> p;
          for (std::size_t i = 0; i < len; ++i) p.push_back(b[(s + i) % b.size()]);
          auto f = path_geodesic(ix, p, *ctx.oracle, ctx.budget, "A2");
          if (f.status != Check::pass) f.detail = name + ": " + f.detail;
          note(rep.A2, std::move(f));
        }
    } else {
      note(rep.A2, {"A2", Check::unknown, "no oracle for geodesy"});
    }
    for (auto t : ix.cells()) {
      if (t == c) continue;
      for (const auto& r : find_contiguity(ix, c, {t, {}}, ctx.contiguity)) {
        if (r.degree < ctx.params.epsilon) continue;
        Rational lim = (Rational(1) + ctx.params.gamma) * Rational(ix.rank[t]);
        if (!(Rational(static_cast<std::int64_t>(r.q2_length)) < lim))
          note(rep.A3, {"A3", Check::fail,
                        name + " to cell " + std::to_string(t) + ": degree " + to_string(r.degree) + ", |q2| = " + std::to_string(r.q2_length) +
                            " >= (1+gamma)*" + std::to_string(ix.rank[t])});
      }
    }
  }
  return rep;
}

struct SmoothReport {
  Check geodesic = Check::pass, contiguity = Check::pass;
  std::vector<Finding> findings;
  Check overall() const { return combine(geodesic, contiguity); }
};

inline SmoothReport check_smooth_section(const DiagramIndex& ix, const ContourSection& q, unsigned r, const CheckContext& ctx) {
  SmoothReport rep;
  const auto& c = ix.contour.at(q.contour);
  if (q.length == 0 || c.empty()) return rep;
  const bool cyclic = q.length >= c.size();
  std::vector<std::size_t> sec;
  for (std::size_t i = 0; i < std::min(q.length, c.size()); ++i) sec.push_back(c[(q.start + i) % c.size()]);
  const std::size_t span = std::min<std::size_t>(std::max<unsigned>(r, 2), sec.size());
  for (std::size_t len = 1; len <= span; ++len) {
    const std::size_t starts = cyclic ? (len == sec.size() ? 1 : sec.size()) : sec.size() - len + 1;
    for (std::size_t s = 0; s < starts; ++s) {
      std::vector<std::size_t> p;
      for (std::size_t i = 0; i < len; ++i) p.push_back(sec[(s + i) % sec.size()]);
      if (!ctx.oracle) {
        rep.geodesic = combine(rep.geodesic, Check::unknown);
        continue;
      }
      auto f = path_geodesic(ix, p, *ctx.oracle, ctx.budget, "geodesic");
      rep.geodesic = combine(rep.geodesic, f.status);
      if (f.status != Check::pass) rep.findings.push_back(std::move(f));
    }
  }
  const Rational lim = (Rational(1) + ctx.params.gamma) * Rational(static_cast<std::int64_t>(r));
  for (auto cell : ix.cells())
    for (const auto& rec : find_contiguity(ix, cell, {std::nullopt, q}, ctx.contiguity)) {
      if (rec.degree < ctx.params.epsilon) continue;
      if (!(Rational(static_cast<std::int64_t>(rec.q2_length)) < lim)) {
        rep.contiguity = Check::fail;
        rep.findings.push_back({"contiguity", Check::fail,
                                "cell " + std::to_string(cell) + ": |q2| = " + std::to_string(rec.q2_length) + " >= (1+gamma)*" + std::to_string(r)});
      }
    }
  return rep;
}

struct GammaCell {
  std::size_t cell = 0;
  Rational degree_sum;
  std::vector<ContiguityRecord> chosen;
};

struct GammaReport {
  bool precondition = true;  // r(Delta) > 0
  std::vector<GammaCell> all;    // best sum per cell
  std::vector<GammaCell> gamma;  // those above 1 - gamma
};

// Sections default to the whole contours, taken cyclically.
inline GammaReport find_gamma_cells(const DiagramIndex& ix, std::vector<ContourSection> sections, const CheckContext& ctx) {
  GammaReport rep;
  unsigned r = 0;
  for (auto c : ix.cells()) r = std::max(r, ix.rank[c]);
  if (r == 0) {
    rep.precondition = false;
    return rep;
  }
  if (sections.empty())
    for (std::size_t c = 0; c < ix.contour.size(); ++c) sections.push_back({c, 0, ix.contour[c].size()});
  const Rational bar_gamma = ctx.params.gamma_bar();
  for (auto cell : ix.cells()) {
    const std::size_t n = ix.face[cell].size();
    std::vector<std::vector<ContiguityRecord>> per;
    for (const auto& s : sections) per.push_back(find_contiguity(ix, cell, {std::nullopt, s}, ctx.contiguity));
    GammaCell best{cell, Rational(0), {}};
    std::vector<ContiguityRecord> pick;
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, std::size_t i, std::size_t total) -> void {
      if (i == per.size()) {
        Rational sum(static_cast<std::int64_t>(total), static_cast<std::int64_t>(n));
        if (sum > best.degree_sum) {
          best.degree_sum = sum;
          best.chosen = pick;
        }
        return;
      }
      self(self, i + 1, total);
      for (const auto& x : per[i]) {
        bool free = true;
        for (std::size_t t = 0; t < x.q1_length && free; ++t) free = !used[(x.q1_start + t) % n];
        if (!free) continue;
        for (std::size_t t = 0; t < x.q1_length; ++t) used[(x.q1_start + t) % n] = true;
        pick.push_back(x);
        self(self, i + 1, total + x.q1_length);
        pick.pop_back();
        for (std::size_t t = 0; t < x.q1_length; ++t) used[(x.q1_start + t) % n] = false;
      }
    };
    rec(rec, 0, 0);
    rep.all.push_back(best);
    if (best.degree_sum > bar_gamma) rep.gamma.push_back(best);
  }
  return rep;
}

// ---- van Kampen diagrams from rewriting traces --------------------------------------------------

namespace detail {

// Planar map under construction: a rotation system on darts.
class MapBuilder {
 public:
  std::vector<std::size_t> tail, head, inv;
  std::vector<Letter> label;
  std::vector<bool> alive;
  std::vector<std::vector<std::size_t>> rot;  // outgoing darts per vertex, cyclic order
  std::vector<bool> vertex_alive;
  std::vector<std::size_t> alias;             // replaced darts
  std::vector<long> cell_relator;             // per dart that bounds a new cell: relator id, else -1

  std::size_t add_vertex() {
    rot.emplace_back();
    vertex_alive.push_back(true);
    return rot.size() - 1;
  }
  std::size_t add_edge(std::size_t u, std::size_t v, Letter l) {
    std::size_t d = tail.size();
    tail.insert(tail.end(), {u, v});
    head.insert(head.end(), {v, u});
    inv.insert(inv.end(), {d + 1, d});
    label.insert(label.end(), {l, l.inverse()});
    alive.insert(alive.end(), {true, true});
    alias.insert(alias.end(), {d, d + 1});
    cell_relator.insert(cell_relator.end(), {-1, -1});
    return d;
  }
  std::size_t resolve(std::size_t d) const {
    while (alias[d] != d) d = alias[d];
    return d;
  }
  std::size_t pos_in(std::size_t v, std::size_t d) const {
    auto it = std::find(rot[v].begin(), rot[v].end(), d);
    if (it == rot[v].end()) throw StateError("rotation system lost a dart");
    return static_cast<std::size_t>(it - rot[v].begin());
  }
  std::size_t succ(std::size_t v, std::size_t d) const {
    const auto& r = rot[v];
    return r[(pos_in(v, d) + 1) % r.size()];
  }
  // insert dart x right after dart d at vertex v
  void insert_after(std::size_t v, std::size_t d, std::size_t x) {
    auto& r = rot[v];
    r.insert(r.begin() + static_cast<long>(pos_in(v, d) + 1), x);
  }
  void erase(std::size_t v, std::size_t d) {
    auto& r = rot[v];
    r.erase(r.begin() + static_cast<long>(pos_in(v, d)));
  }
  void kill_vertex_tree(std::size_t v, std::size_t keep) {
    // deletes everything reachable from v without passing through `keep`
    std::vector<std::size_t> stack{v};
    std::set<std::size_t> seen{v};
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (auto d : rot[x]) {
        alive[d] = alive[inv[d]] = false;
        auto y = head[d];
        if (y != keep && seen.insert(y).second) stack.push_back(y);
      }
      rot[x].clear();
      vertex_alive[x] = false;
    }
  }
};

}  // namespace detail

struct VkResult {
  Status status = Status::unknown;  // yes: diagram built; no: certified trivial-free; unknown
  std::optional<Diagram> diagram;
  std::string note;
};

// Diagram whose contour reads the start word of a trace that rewrites it to 1.
inline std::optional<Diagram> diagram_from_trace(const Trace& t, const RelatorSet& rels, std::string* why = nullptr) {
  auto bail = [&](std::string msg) -> std::optional<Diagram> {
    if (why) *why = std::move(msg);
    return std::nullopt;
  };
  if (!replays_to(t, rels, {})) return bail("trace does not replay to the empty word");
  detail::MapBuilder mb;
  const std::size_t n = t.start.size();
  std::vector<std::size_t> contour, P;
  if (n == 0) {
    mb.add_vertex();
  } else {
    for (std::size_t i = 0; i < n; ++i) mb.add_vertex();
    for (std::size_t i = 0; i < n; ++i) contour.push_back(mb.add_edge(i, (i + 1) % n, t.start[i]));
    for (std::size_t i = 0; i < n; ++i) {
      // around vertex i: leave along contour[i], then come back along inv(contour[i-1])
      mb.rot[i] = {contour[i], mb.inv[contour[(i + n - 1) % n]]};
    }
    P = contour;
  }
  for (const auto& s : t.steps) {
    if (s.op == TraceStep::Op::RelatorInsert) {
      if (P.empty()) return bail("insertion into an exhausted hole");
      const std::size_t pos = s.position;
      const std::size_t before = P[(pos + P.size() - 1) % P.size()];
      const std::size_t x = mb.head[before];
      LetterVec lab = rels[s.relator].expand(s.sign, s.shift % rels[s.relator].length());
      const std::size_t L = lab.size();
      std::vector<std::size_t> loop;
      std::size_t cur = x;
      for (std::size_t j = 0; j < L; ++j) {
        std::size_t nxt = j + 1 == L ? x : mb.add_vertex();
        std::size_t d = mb.add_edge(cur, nxt, lab[j]);
        loop.push_back(d);
        if (j > 0) mb.rot[cur] = {d, mb.inv[loop[j - 1]]};
        cur = nxt;
      }
      mb.insert_after(x, mb.inv[before], loop.front());
      mb.insert_after(x, loop.front(), mb.inv[loop.back()]);
      mb.cell_relator[mb.inv[loop.front()]] = static_cast<long>(s.relator);
      P.insert(P.begin() + static_cast<long>(pos), loop.begin(), loop.end());
    } else {
      const std::size_t pos = s.position;
      if (pos + 1 >= P.size()) return bail("cancellation outside the hole boundary");
      const std::size_t d1 = P[pos], d2 = P[pos + 1];
      const std::size_t x = mb.tail[d1], y = mb.head[d1], w = mb.head[d2];
      if (d2 == mb.inv[d1]) {
        // a spike into the hole: y is a leaf
        mb.erase(x, d1);
        mb.alive[d1] = mb.alive[d2] = false;
        mb.rot[y].clear();
        mb.vertex_alive[y] = false;
        P.erase(P.begin() + static_cast<long>(pos), P.begin() + static_cast<long>(pos) + 2);
        continue;
      }
      const bool last = P.size() == 2;
      const std::size_t prev_in = last ? d2 : P[(pos + P.size() - 1) % P.size()];
      const std::size_t next_out = last ? d1 : P[(pos + 2) % P.size()];
      // glue d2 onto inv(d1): at y drop d2, at w the dart inv(d2) becomes d1
      mb.erase(y, d2);
      mb.alias[d2] = mb.inv[d1];
      mb.alias[mb.inv[d2]] = d1;
      mb.alive[d2] = mb.alive[mb.inv[d2]] = false;
      if (last) {
        mb.erase(x, mb.inv[d2]);
      } else if (w != x) {
        // merge w into x: ... inv(prev_in) | next_out, W..., (inv d2 -> d1), X...
        auto& rw = mb.rot[w];
        std::size_t k = mb.pos_in(w, next_out);
        std::vector<std::size_t> wpart;
        for (std::size_t i = 0; i < rw.size(); ++i) {
          std::size_t dd = rw[(k + i) % rw.size()];
          if (dd == mb.inv[d2]) break;
          wpart.push_back(dd);
        }
        auto& rx = mb.rot[x];
        std::size_t kx = mb.pos_in(x, d1);
        std::vector<std::size_t> merged{d1};
        for (std::size_t i = 1; i < rx.size(); ++i) merged.push_back(rx[(kx + i) % rx.size()]);
        merged.insert(merged.end(), wpart.begin(), wpart.end());
        mb.rot[x] = merged;
        for (auto dd : wpart) {
          mb.tail[dd] = x;
          mb.head[mb.inv[dd]] = x;
        }
        mb.rot[w].clear();
        mb.vertex_alive[w] = false;
      } else {
        // closing a 2-cycle at x: split off the pocket between inv(d2) and d1
        auto& rx = mb.rot[x];
        std::size_t kd = mb.pos_in(x, d1);
        std::vector<std::size_t> pocket, keep;
        bool in_pocket = true;
        for (std::size_t i = 0; i < rx.size(); ++i) {
          std::size_t dd = rx[(kd + i) % rx.size()];
          if (dd == mb.inv[d2]) {
            in_pocket = false;
            continue;
          }
          (in_pocket ? pocket : keep).push_back(dd);
        }
        (void)prev_in;
        // the pocket side holds d1; it must not reach the contour
        std::set<std::size_t> contour_set;
        for (auto c : contour) contour_set.insert(mb.resolve(c)), contour_set.insert(mb.inv[mb.resolve(c)]);
        std::vector<std::size_t> stack;
        std::set<std::size_t> seen{x};
        bool touches = false;
        for (auto dd : pocket) {
          touches = touches || contour_set.count(dd);
          if (seen.insert(mb.head[dd]).second) stack.push_back(mb.head[dd]);
        }
        std::vector<std::size_t> region = stack;
        while (!stack.empty()) {
          auto v = stack.back();
          stack.pop_back();
          for (auto dd : mb.rot[v]) {
            touches = touches || contour_set.count(dd);
            if (seen.insert(mb.head[dd]).second) {
              stack.push_back(mb.head[dd]);
              region.push_back(mb.head[dd]);
            }
          }
        }
        if (touches) return bail("a folded pocket contains part of the contour");
        for (auto dd : pocket) mb.alive[dd] = mb.alive[mb.inv[dd]] = false;
        for (auto v : region) {
          for (auto dd : mb.rot[v]) mb.alive[dd] = mb.alive[mb.inv[dd]] = false;
          mb.rot[v].clear();
          mb.vertex_alive[v] = false;
        }
        mb.rot[x] = keep;
      }
      P.erase(P.begin() + static_cast<long>(pos), P.begin() + static_cast<long>(pos) + 2);
      if (last) P.clear();
    }
  }
  if (!P.empty()) return bail("hole not closed");

  // read off faces
  Diagram d;
  std::map<std::size_t, long> vid, eid;
  const std::size_t base = n ? mb.tail[mb.resolve(contour[0])] : 0;
  std::deque<std::size_t> q{base};
  vid[base] = 0;
  while (!q.empty()) {
    auto v = q.front();
    q.pop_front();
    for (auto dd : mb.rot[v]) {
      if (!eid.count(dd)) {
        long k = static_cast<long>(eid.size());
        eid[dd] = k;
        eid[mb.inv[dd]] = k + 1;
      }
      if (!vid.count(mb.head[dd])) {
        long k = static_cast<long>(vid.size());
        vid[mb.head[dd]] = k;
        q.push_back(mb.head[dd]);
      }
    }
  }
  // edges in id order
  std::vector<std::size_t> by_id(eid.size());
  for (auto [dd, k] : eid) by_id[static_cast<std::size_t>(k)] = dd;
  for (long v = 0; v < static_cast<long>(vid.size()); ++v) d.vertices.push_back(v);
  for (std::size_t k = 0; k < by_id.size(); ++k) {
    auto dd = by_id[k];
    d.edges.push_back({static_cast<long>(k), vid.at(mb.tail[dd]), vid.at(mb.head[dd]), mb.label[dd], eid.at(mb.inv[dd])});
  }
  std::set<std::size_t> outer_darts;
  std::vector<std::size_t> cont;
  for (auto c : contour) {
    cont.push_back(mb.resolve(c));
    outer_darts.insert(mb.inv[mb.resolve(c)]);
  }
  std::vector<bool> done(mb.tail.size(), false);
  std::vector<DiagramFace> cells;
  DiagramFace outer;
  outer.role = "outer";
  for (std::size_t k = 0; k < by_id.size(); ++k) {
    auto start = by_id[k];
    if (done[start]) continue;
    std::vector<long> bnd;
    bool is_outer = false;
    for (std::size_t dd = start; !done[dd]; dd = mb.succ(mb.head[dd], mb.inv[dd])) {
      done[dd] = true;
      bnd.push_back(eid.at(dd));
      is_outer = is_outer || outer_darts.count(dd);
    }
    if (is_outer) {
      outer.boundary = bnd;
    } else {
      DiagramFace f;
      f.boundary = bnd;
      cells.push_back(f);
    }
  }
  // outer face first, then cells; boundaries start at their smallest edge id
  auto rotate_min = [](std::vector<long>& b) {
    if (!b.empty()) std::rotate(b.begin(), std::min_element(b.begin(), b.end()), b.end());
  };
  std::vector<DiagramFace> faces{outer};
  for (auto& c : cells) faces.push_back(c);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    faces[i].id = static_cast<long>(i);
    if (i) rotate_min(faces[i].boundary);
  }
  // the outer boundary is read so that the contour starts at the base vertex
  if (n) {
    std::vector<long> ob;
    for (auto it = cont.rbegin(); it != cont.rend(); ++it) ob.push_back(eid.at(mb.inv[*it]));
    faces[0].boundary = ob;
  }
  std::vector<long> cids;
  for (auto c : cont) cids.push_back(eid.at(c));
  d.faces = faces;
  d.contours = {cids};
  for (auto& f : d.faces) {
    if (f.role != "cell") continue;
    LetterVec lab;
    for (long e : f.boundary) lab.push_back(d.edges[static_cast<std::size_t>(e)].label);
    if (auto m = match_relator(cyclically_reduce(lab), rels)) f.rank = rels[*m].rank;
  }
  return d;
}

inline VkResult search_vk_certificate(const Word& w, const Oracle& o, std::size_t max_cells, const Budget& b) {
  VkResult r;
  Verdict v = o.is_identity(w, b);
  if (v.no()) {
    r.status = Status::no;
    r.note = std::string("certified nontrivial (") + to_string(v.refutation) + ")";
    return r;
  }
  if (v.unknown()) {
    r.note = "oracle undecided within budget";
    return r;
  }
  if (v.witness->trace.relator_steps() > max_cells) {
    r.note = "certificate needs more than " + std::to_string(max_cells) + " cells";
    return r;
  }
  std::string why;
  auto d = diagram_from_trace(v.witness->trace, o.relators(), &why);
  if (!d) {
    r.note = "diagram construction failed: " + why;
    return r;
  }
  auto val = validate_diagram(*d, o.relators());
  if (!val.ok) {
    r.note = "constructed diagram failed validation: " + val.errors.front().message;
    return r;
  }
  r.status = Status::yes;
  r.diagram = std::move(d);
  return r;
}

struct ReducedReport {
  Status status = Status::unknown;  // yes: reduced up to the cap; no: certified not reduced
  std::string detail;
};

// Minimal cell count can only be refuted: by a cancelling mirror pair, or by
// an oracle certificate with fewer cells.
inline ReducedReport check_reduced(const DiagramIndex& ix, const Oracle& o, const Budget& b) {
  ReducedReport rep;
  for (auto c : ix.cells())
    for (auto e : ix.face[c]) {
      auto other = ix.face_of[ix.inv[e]];
      if (ix.outer[other] || other == c || ix.relator[other] != ix.relator[c]) continue;
      // mirror images read from the common edge
      const auto& B1 = ix.face[c];
      const auto& B2 = ix.face[other];
      if (B1.size() != B2.size()) continue;
      std::size_t i1 = static_cast<std::size_t>(std::find(B1.begin(), B1.end(), e) - B1.begin());
      std::size_t i2 = static_cast<std::size_t>(std::find(B2.begin(), B2.end(), ix.inv[e]) - B2.begin());
      bool mirror = true;
      for (std::size_t t = 0; t < B1.size() && mirror; ++t)
        mirror = ix.label[B1[(i1 + t) % B1.size()]] == ix.label[B2[(i2 + B2.size() - t) % B2.size()]].inverse();
      if (mirror) {
        rep.status = Status::no;
        rep.detail = "cells " + std::to_string(c) + " and " + std::to_string(other) + " are mirror images across a common edge";
        return rep;
      }
    }
  const std::size_t cells = ix.cells().size();
  if (ix.contour.size() == 1 && cells > 0) {
    Word w = Word::reduce(ix.path_label(ix.contour[0]));
    Verdict v = o.is_identity(w, b);
    if (v.yes() && v.witness->trace.relator_steps() < cells) {
      rep.status = Status::no;
      rep.detail = "a diagram with " + std::to_string(v.witness->trace.relator_steps()) + " cells has the same contour label";
      return rep;
    }
  }
  rep.status = Status::yes;
  rep.detail = "no smaller diagram found (cap " + std::to_string(cells) + " cells)";
  return rep;
}

}  // namespace burnlab
