#pragma once

#include <string>
#include <vector>

#include "burnlab/relators.hpp"

namespace burnlab {

// One rewriting step. FreeCancel deletes letters position, position+1 (which
// must be mutually inverse). RelatorInsert inserts relator^sign rotated left
// by shift before position.
struct TraceStep {
  enum class Op { FreeCancel, RelatorInsert };
  Op op = Op::FreeCancel;
  std::size_t position = 0;
  std::size_t relator = 0;
  std::size_t shift = 0;
  int sign = 1;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Trace {
  LetterVec start;
  std::vector<TraceStep> steps;
  std::size_t relator_steps() const {
    std::size_t n = 0;
    for (const auto& s : steps) n += s.op == TraceStep::Op::RelatorInsert;
    return n;
  }
};

struct ReplayResult {
  bool ok = false;
  LetterVec end;
  std::string error;
};

// Replays a trace from scratch with plain vector edits.
inline ReplayResult replay(const Trace& t, const RelatorSet& rels) {
  ReplayResult out;
  LetterVec w = t.start;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    if (s.op == TraceStep::Op::FreeCancel) {
      if (s.position + 1 >= w.size() || w[s.position] != w[s.position + 1].inverse()) {
        out.error = "step " + std::to_string(i) + ": no cancelling pair at " + std::to_string(s.position);
        return out;
      }
      w.erase(w.begin() + s.position, w.begin() + s.position + 2);
    } else {
      if (s.relator >= rels.size() || s.position > w.size() || (s.sign != 1 && s.sign != -1)) {
        out.error = "step " + std::to_string(i) + ": bad relator insertion";
        return out;
      }
      const auto& r = rels[s.relator];
      if (r.length() > rels.expansion_cap()) {
        out.error = "step " + std::to_string(i) + ": relator exceeds expansion cap";
        return out;
      }
      LetterVec ins = r.expand(s.sign, s.shift % r.length());
      w.insert(w.begin() + s.position, ins.begin(), ins.end());
    }
  }
  out.ok = true;
  out.end = std::move(w);
  return out;
}

inline bool replays_to(const Trace& t, const RelatorSet& rels, const LetterVec& expected) {
  auto r = replay(t, rels);
  return r.ok && r.end == expected;
}

// Builds traces while rewriting a working word.
class TraceBuilder {
 public:
  TraceBuilder(const RelatorSet& rels, LetterVec start) : rels_(&rels) {
    trace_.start = start;
    cur_ = std::move(start);
  }

  const LetterVec& current() const { return cur_; }

  void cancel(std::size_t pos) {
    trace_.steps.push_back({TraceStep::Op::FreeCancel, pos, 0, 0, 1});
    cur_.erase(cur_.begin() + pos, cur_.begin() + pos + 2);
  }

  // Cancels greedily, scanning from `from`.
  void free_reduce(std::size_t from = 0) {
    std::size_t i = from;
    while (i + 1 < cur_.size()) {
      if (cur_[i] == cur_[i + 1].inverse()) {
        cancel(i);
        if (i > 0) --i;
      } else {
        ++i;
      }
    }
  }

  void insert(std::size_t pos, std::size_t relator, int sign, std::size_t shift) {
    const auto& r = (*rels_)[relator];
    trace_.steps.push_back({TraceStep::Op::RelatorInsert, pos, relator, shift, sign});
    LetterVec ins = r.expand(sign, shift);
    cur_.insert(cur_.begin() + pos, ins.begin(), ins.end());
  }

  // The len letters at pos equal the prefix of relator^sign rotated by
  // shift; swap them for the inverse of the rest of the relator, then reduce.
  void replace(std::size_t pos, std::size_t len, std::size_t relator, int sign, std::size_t shift) {
    const std::size_t L = (*rels_)[relator].length();
    insert(pos, relator, -sign, (L - shift % L) % L);
    for (std::size_t j = 1; j <= len; ++j) cancel(pos + L - j);
    free_reduce(pos > 0 ? pos - 1 : 0);
  }

  Trace finish() && { return std::move(trace_); }
  const Trace& trace() const { return trace_; }

 private:
  const RelatorSet* rels_;
  LetterVec cur_;
  Trace trace_;
};

inline LetterVec concat(std::initializer_list<std::span<const Letter>> parts) {
  LetterVec out;
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace burnlab
