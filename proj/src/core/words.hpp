#pragma once

// Words over a finite generating set with free reduction plus
// model-declared rewriting. A rewriter must be confluent so that equal
// group elements share a normal form; each model supplies its own.

#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"

namespace bfp {

struct Generator {
  std::string name;
  std::string inverse_name;
};

// Letters are nonzero ints: +k is generator k (1-based), -k its inverse.
using Letters = std::vector<int>;

inline Letters free_reduce(const Letters& in) {
  Letters out;
  for (int x : in) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

inline Letters concat(const Letters& a, const Letters& b) {
  Letters r = a;
  r.insert(r.end(), b.begin(), b.end());
  return free_reduce(r);
}

inline Letters inverse(const Letters& a) {
  Letters r;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r.push_back(-*it);
  return r;
}

inline Letters power(const Letters& a, int n) {
  Letters base = n >= 0 ? a : inverse(a);
  Letters r;
  for (int i = 0; i < std::abs(n); ++i) r = concat(r, base);
  return r;
}

// w = u v u^-1 with v cyclically reduced; returns (u, v).
inline std::pair<Letters, Letters> cyclic_reduce(const Letters& w0) {
  Letters w = free_reduce(w0);
  Letters u;
  while (w.size() >= 2 && w.front() == -w.back()) {
    u.push_back(w.front());
    w.erase(w.begin());
    w.pop_back();
  }
  return {u, w};
}

class Rewriter {
 public:
  virtual ~Rewriter() = default;
  virtual Letters normalize(const Letters& w) const { return free_reduce(w); }
};

// Free partially-commutative normal form: free reduction interleaved with
// sorting adjacent commuting letters by |letter| then sign.
class CommutingRewriter : public Rewriter {
 public:
  explicit CommutingRewriter(std::set<std::pair<int, int>> commuting_gens)
      : pairs_(std::move(commuting_gens)) {}

  Letters normalize(const Letters& w) const override {
    Letters cur = free_reduce(w);
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i + 1 < cur.size(); ++i) {
        if (commute(cur[i], cur[i + 1]) && later(cur[i], cur[i + 1])) {
          std::swap(cur[i], cur[i + 1]);
          changed = true;
        }
      }
      if (changed) cur = free_reduce(cur);
    }
    return cur;
  }

 private:
  bool commute(int a, int b) const {
    int ga = std::abs(a), gb = std::abs(b);
    if (ga == gb) return false;
    auto key = ga < gb ? std::make_pair(ga, gb) : std::make_pair(gb, ga);
    return pairs_.count(key) > 0;
  }
  static bool later(int a, int b) {
    int ga = std::abs(a), gb = std::abs(b);
    if (ga != gb) return ga > gb;
    return a < b;  // inverse letter sorts after the positive one
  }
  std::set<std::pair<int, int>> pairs_;
};

// Normal form computed from an exact element key supplied by the model:
// the first enumerated word per key is canonical.
class FunctionRewriter : public Rewriter {
 public:
  using KeyFn = std::function<std::string(const Letters&)>;
  explicit FunctionRewriter(KeyFn fn) : fn_(std::move(fn)) {}
  Letters normalize(const Letters& w) const override {
    Letters fr = free_reduce(w);
    std::string key = fn_(fr);
    auto it = canon_.find(key);
    if (it == canon_.end()) it = canon_.emplace(key, fr).first;
    return it->second;
  }

 private:
  KeyFn fn_;
  mutable std::map<std::string, Letters> canon_;
};

struct GroupWord {
  Letters letters;      // a representative
  Letters normal_form;  // canonical per the model's rewriter
  int length() const { return static_cast<int>(letters.size()); }
  bool is_identity() const { return normal_form.empty(); }
};

inline std::string word_str(const std::vector<Generator>& gens, const Letters& w) {
  std::string out;
  for (int x : w) {
    if (!out.empty()) out += " ";
    const Generator& g = gens.at(std::abs(x) - 1);
    out += x > 0 ? g.name : g.inverse_name;
  }
  return out;
}

inline Letters parse_word(const std::vector<Generator>& gens, const std::string& s) {
  Letters out;
  std::string tok;
  auto flush = [&]() {
    if (tok.empty()) return;
    for (size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].name == tok) { out.push_back(static_cast<int>(i) + 1); tok.clear(); return; }
      if (gens[i].inverse_name == tok) { out.push_back(-(static_cast<int>(i) + 1)); tok.clear(); return; }
    }
    throw Error(Errc::parse_error, "unknown generator token '" + tok + "'");
  };
  for (char c : s) {
    if (c == ' ' || c == '*') flush();
    else tok += c;
  }
  flush();
  return free_reduce(out);
}

// All distinct normal forms of length <= budget, identity included,
// deterministic (length, lex) order of shortest representatives.
inline std::vector<GroupWord> enumerate_words(int num_gens, int budget,
                                              const Rewriter& rw,
                                              long max_words = 0) {
  if (max_words == 0) {
    if (const char* cap = std::getenv("OP_MAX_WORDS")) max_words = std::atol(cap);
    else max_words = 2'000'000;
  }
  std::vector<GroupWord> out;
  std::set<Letters> seen;
  std::vector<Letters> frontier = {Letters{}};
  {
    Letters id_nf = rw.normalize({});
    seen.insert(id_nf);
    out.push_back(GroupWord{{}, id_nf});
  }
  for (int len = 1; len <= budget; ++len) {
    std::vector<Letters> next;
    for (const Letters& w : frontier) {
      for (int g = 1; g <= num_gens; ++g) {
        for (int x : {g, -g}) {
          if (!w.empty() && w.back() == -x) continue;  // stay freely reduced
          Letters cand = w;
          cand.push_back(x);
          next.push_back(cand);
          Letters nf = rw.normalize(cand);
          if (seen.insert(nf).second) {
            out.push_back(GroupWord{cand, nf});
            if (static_cast<long>(out.size()) > max_words)
              throw Error(Errc::budget_too_large,
                          "word enumeration exceeds cap of " + std::to_string(max_words));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace bfp
