#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kpz {

struct DoesNotFit : std::invalid_argument {
  explicit DoesNotFit(const std::string& m) : std::invalid_argument(m) {}
};

struct BoxContext {
  int k{0};
  int n{0};

  void validate() const {
    if (k < 0 || n < k) throw std::invalid_argument("need 0 <= k <= n");
  }
  int width() const { return n - k; }
  friend bool operator==(const BoxContext&, const BoxContext&) = default;
};

struct DiagramStats {
  int size;
  int width;
  int height;
  friend bool operator==(const DiagramStats&, const DiagramStats&) = default;
};

// Partition inside a k x (n-k) box.
class YoungDiagram {
 public:
  YoungDiagram() = default;

  YoungDiagram(std::vector<int> rows, BoxContext ctx) : rows_(std::move(rows)), ctx_(ctx) {
    ctx_.validate();
    while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
    if (static_cast<int>(rows_.size()) > ctx_.k) throw DoesNotFit("more than k rows");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i] < 0) throw DoesNotFit("negative row");
      if (i && rows_[i] > rows_[i - 1]) throw DoesNotFit("rows must be weakly decreasing");
    }
    if (!rows_.empty() && rows_[0] > ctx_.width()) throw DoesNotFit("first row exceeds n-k");
  }

  // Comma-separated weakly decreasing rows; empty string is the empty diagram.
  static YoungDiagram parse(const std::string& s, BoxContext ctx) {
    std::vector<int> rows;
    std::string tok;
    std::stringstream ss(s);
    while (std::getline(ss, tok, ',')) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
      if (tok.empty()) continue;
      std::size_t pos = 0;
      int v;
      try {
        v = std::stoi(tok, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad partition literal: " + s);
      }
      if (pos != tok.size()) throw std::invalid_argument("bad partition literal: " + s);
      rows.push_back(v);
    }
    return YoungDiagram(rows, ctx);
  }

  // Frame {l_1 < ... < l_k} with lambda_{k-j+1} = l_j - j.
  static YoungDiagram from_frame(const std::vector<int>& frame, BoxContext ctx) {
    ctx.validate();
    if (static_cast<int>(frame.size()) != ctx.k) throw DoesNotFit("frame must have k entries");
    std::vector<int> rows(ctx.k);
    for (int j = 1; j <= ctx.k; ++j) {
      int l = frame[j - 1];
      if (l < 1 || l > ctx.n || (j > 1 && l <= frame[j - 2])) throw DoesNotFit("invalid frame");
      rows[ctx.k - j] = l - j;
    }
    return YoungDiagram(rows, ctx);
  }

  const std::vector<int>& rows() const { return rows_; }
  BoxContext context() const { return ctx_; }
  int k() const { return ctx_.k; }
  int n() const { return ctx_.n; }

  int row(int i) const { return i < static_cast<int>(rows_.size()) ? rows_[i] : 0; }
  int size() const { return std::accumulate(rows_.begin(), rows_.end(), 0); }
  int width() const { return rows_.empty() ? 0 : rows_[0]; }
  int height() const { return static_cast<int>(rows_.size()); }
  bool empty() const { return rows_.empty(); }
  DiagramStats stats() const { return {size(), width(), height()}; }

  std::vector<int> frame() const {
    std::vector<int> f(ctx_.k);
    for (int j = 1; j <= ctx_.k; ++j) f[j - 1] = row(ctx_.k - j) + j;
    return f;
  }

  bool in_frame(int i) const {
    auto f = frame();
    return std::find(f.begin(), f.end(), i) != f.end();
  }

  // 180-degree rotated complement; frame n+1-l.
  YoungDiagram dual() const {
    std::vector<int> r(ctx_.k);
    for (int i = 0; i < ctx_.k; ++i) r[i] = ctx_.width() - row(ctx_.k - 1 - i);
    return YoungDiagram(r, ctx_);
  }

  bool contains(const YoungDiagram& o) const {
    for (int i = 0; i < ctx_.k; ++i)
      if (o.row(i) > row(i)) return false;
    return true;
  }

  YoungDiagram in_context(BoxContext c) const { return YoungDiagram(rows_, c); }

  // "3,1"; empty diagram is "".
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_.size(); ++i) s += (i ? "," : "") + std::to_string(rows_[i]);
    return s;
  }

  // Display form: "(3,1)", "()" for the empty diagram.
  std::string label() const { return "(" + to_string() + ")"; }

  // Filename-safe form: "3-1", "0" for the empty diagram.
  std::string slug() const {
    if (rows_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < rows_.size(); ++i) s += (i ? "-" : "") + std::to_string(rows_[i]);
    return s;
  }

  friend bool operator==(const YoungDiagram& a, const YoungDiagram& b) {
    return a.rows_ == b.rows_ && a.ctx_ == b.ctx_;
  }

  // Size first, then rows in lexicographically decreasing order.
  friend std::strong_ordering operator<=>(const YoungDiagram& a, const YoungDiagram& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    if (auto c = b.rows_ <=> a.rows_; c != 0) return c;
    if (auto c = a.ctx_.k <=> b.ctx_.k; c != 0) return c;
    return a.ctx_.n <=> b.ctx_.n;
  }

 private:
  std::vector<int> rows_;
  BoxContext ctx_{};
};

inline std::ostream& operator<<(std::ostream& os, const YoungDiagram& d) { return os << d.label(); }

inline DiagramStats stats(const YoungDiagram& d) { return d.stats(); }

// All diagrams in the box, in the order of operator<=>.
inline std::vector<YoungDiagram> diagrams_in_box(BoxContext ctx) {
  ctx.validate();
  std::vector<YoungDiagram> out;
  std::vector<int> f(ctx.k);
  std::iota(f.begin(), f.end(), 1);
  while (true) {
    out.push_back(YoungDiagram::from_frame(f, ctx));
    int i = ctx.k - 1;
    while (i >= 0 && f[i] == ctx.n - ctx.k + i + 1) --i;
    if (i < 0) break;
    ++f[i];
    for (int j = i + 1; j < ctx.k; ++j) f[j] = f[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Diagrams fitting inside an h x w sub-box of the context box.
inline std::vector<YoungDiagram> diagrams_within(BoxContext ctx, int h, int w) {
  std::vector<YoungDiagram> out;
  for (auto& d : diagrams_in_box(ctx))
    if (d.height() <= h && d.width() <= w) out.push_back(d);
  return out;
}

// lambda |> mu: lambda - mu is a horizontal and vertical strip, on frames:
// 0 <= l_i - m_i <= 1, and l_i - m_i = 1 forces m_{i+1} != l_i.
inline bool strip_rel(const YoungDiagram& lam, const YoungDiagram& mu) {
  if (!(lam.context() == mu.context())) throw std::invalid_argument("diagrams from different boxes");
  auto l = lam.frame();
  auto m = mu.frame();
  const int k = lam.k();
  for (int i = 0; i < k; ++i)
    if (l[i] - m[i] < 0 || l[i] - m[i] > 1) return false;
  for (int i = 0; i + 1 < k; ++i)
    if (l[i] - m[i] == 1 && m[i + 1] == l[i]) return false;
  return true;
}

}  // namespace kpz
