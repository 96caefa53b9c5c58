#include "hmmforge/canonical.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <string_view>

#include "hmmforge/digest.hpp"
#include "hmmforge/error.hpp"

namespace hmmforge {

namespace {

constexpr StateId kUnset = std::numeric_limits<StateId>::max();

// BFS numbering from `root`; unreachable states are appended in index order.
std::vector<StateId> bfs_order(const DeterministicHmm& m, StateId root) {
  std::vector<StateId> number(m.state_count(), kUnset);
  std::vector<StateId> order;
  order.reserve(m.state_count());
  auto visit_from = [&](StateId r) {
    number[r] = static_cast<StateId>(order.size());
    order.push_back(r);
    for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
      for (const auto& t : m.outgoing(order[head])) {
        if (t.to < m.state_count() && number[t.to] == kUnset) {
          number[t.to] = static_cast<StateId>(order.size());
          order.push_back(t.to);
        }
      }
    }
  };
  visit_from(root);
  for (StateId s = 0; s < m.state_count(); ++s) {
    if (number[s] == kUnset) visit_from(s);
  }
  return order;
}

std::vector<std::uint64_t> encode(const DeterministicHmm& m, const std::vector<StateId>& order) {
  std::vector<StateId> number(m.state_count(), kUnset);
  for (std::size_t i = 0; i < order.size(); ++i) number[order[i]] = static_cast<StateId>(i);
  std::vector<std::uint64_t> code;
  code.reserve(m.transitions().size() * 3 + order.size());
  for (StateId s : order) {
    for (const auto& t : m.outgoing(s)) {
      code.push_back(t.symbol);
      code.push_back(t.to < m.state_count() ? number[t.to] : kUnset);
      code.push_back(std::bit_cast<std::uint64_t>(t.p));
    }
    code.push_back(std::numeric_limits<std::uint64_t>::max());
  }
  return code;
}

std::vector<StateId> canonical_order(const DeterministicHmm& m) {
  std::vector<StateId> best;
  std::vector<std::uint64_t> best_code;
  for (StateId r = 0; r < m.state_count(); ++r) {
    auto order = bfs_order(m, r);
    auto code = encode(m, order);
    if (best.empty() || code < best_code) {
      best = std::move(order);
      best_code = std::move(code);
    }
  }
  return best;
}

}  // namespace

DeterministicHmm relabel(const DeterministicHmm& model, const std::vector<StateId>& order,
                         const std::vector<std::string>& labels) {
  if (order.size() != model.state_count()) throw Error(ErrorKind::InvalidArgument, "relabel order size mismatch");
  std::vector<StateId> number(model.state_count(), kUnset);
  for (std::size_t i = 0; i < order.size(); ++i) number.at(order[i]) = static_cast<StateId>(i);
  std::vector<std::string> names;
  names.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    names.push_back(labels.empty() ? model.state_label(order[i]) : labels.at(i));
  }
  std::vector<Transition> ts;
  ts.reserve(model.transitions().size());
  for (const auto& t : model.transitions()) {
    ts.push_back({number[t.from], t.symbol, t.to < model.state_count() ? number[t.to] : t.to, t.p});
  }
  return DeterministicHmm(model.alphabet(), std::move(names), std::move(ts));
}

DeterministicHmm canonical_form(const DeterministicHmm& model) {
  return relabel(model, canonical_order(model));
}

std::uint64_t canonical_digest(const DeterministicHmm& model) {
  const auto code = encode(model, canonical_order(model));
  std::string bytes;
  for (const auto& sym : model.alphabet().symbols()) {
    bytes += sym;
    bytes.push_back('\0');
  }
  for (auto v : code) {
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  return digest64(bytes);
}

bool isomorphic(const DeterministicHmm& a, const DeterministicHmm& b, double tol) {
  if (!(a.alphabet() == b.alphabet()) || a.state_count() != b.state_count() ||
      a.transitions().size() != b.transitions().size()) {
    return false;
  }
  const auto n = a.state_count();
  if (n == 0) return true;
  for (StateId root = 0; root < n; ++root) {
    std::vector<StateId> fwd(n, kUnset), inv(n, kUnset);
    std::queue<StateId> q;
    fwd[0] = root;
    inv[root] = 0;
    q.push(0);
    bool ok = true;
    std::size_t mapped = 1;
    while (ok && !q.empty()) {
      const StateId u = q.front();
      q.pop();
      const auto ra = a.outgoing(u);
      const auto rb = b.outgoing(fwd[u]);
      if (ra.size() != rb.size()) {
        ok = false;
        break;
      }
      for (std::size_t i = 0; i < ra.size(); ++i) {
        const auto& ta = ra[i];
        const auto& tb = rb[i];
        if (ta.symbol != tb.symbol || !(std::abs(ta.p - tb.p) <= tol) || ta.to >= n || tb.to >= n) {
          ok = false;
          break;
        }
        if (fwd[ta.to] == kUnset && inv[tb.to] == kUnset) {
          fwd[ta.to] = tb.to;
          inv[tb.to] = ta.to;
          ++mapped;
          q.push(ta.to);
        } else if (fwd[ta.to] != tb.to || inv[tb.to] != ta.to) {
          ok = false;
          break;
        }
      }
    }
    if (ok && mapped == n) return true;
  }
  return false;
}

}  // namespace hmmforge
