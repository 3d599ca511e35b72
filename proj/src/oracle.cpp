#include "horizon/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

#include "horizon/errors.hpp"
#include "horizon/series.hpp"

namespace horizon::oracle {

namespace {

using unruh::Encoding;
using unruh::Preparation;
using unruh::Protocol;
using unruh::SqueezingParameter;

// One amplitude of a pure mixture component: sender label a, receiver index
// r and traced-partner index e (dual rail packs the two modes as n_a * N +
// n_b, which stays below 2^31 for every admissible truncation).  Mixture
// weights are folded into the amplitudes as sqrt(w).
struct Entry {
  std::int32_t a;
  std::int32_t r;
  std::int32_t e;
  double amp;
};

using Component = std::vector<Entry>;
using Components = std::vector<Component>;

enum class Keep { sender_receiver, receiver, sender, environment };

std::int64_t kept_key(const Entry& en, Keep keep) {
  switch (keep) {
    case Keep::sender_receiver:
      return (static_cast<std::int64_t>(en.a) << 32) |
             static_cast<std::uint32_t>(en.r);
    case Keep::receiver:
      return en.r;
    case Keep::sender:
      return en.a;
    case Keep::environment:
      return en.e;
  }
  return 0;
}

std::int64_t traced_key(const Entry& en, Keep keep) {
  switch (keep) {
    case Keep::sender_receiver:
      return en.e;
    case Keep::receiver:
      return (static_cast<std::int64_t>(en.a) << 32) |
             static_cast<std::uint32_t>(en.e);
    case Keep::sender:
      return (static_cast<std::int64_t>(en.r) << 32) |
             static_cast<std::uint32_t>(en.e);
    case Keep::environment:
      return (static_cast<std::int64_t>(en.a) << 32) |
             static_cast<std::uint32_t>(en.r);
  }
  return 0;
}

// Appends the post-channel amplitude list of one logical input, scaled.
void append_logical(Component& out, Encoding enc, int logical,
                    std::int32_t a_label, double scale, double t, double c,
                    int n_dim) {
  const double inv_c = 1.0 / c;
  const double inv_c2 = inv_c * inv_c;
  if (enc == Encoding::single_rail) {
    if (logical == 0) {
      double w = scale * inv_c;  // t^n / cosh r
      for (int n = 0; n < n_dim; ++n) {
        out.push_back(Entry{a_label, n, n, w});
        w *= t;
      }
    } else {
      double w = scale * inv_c2;  // t^n / cosh^2 r
      for (int n = 0; n + 1 < n_dim; ++n) {
        out.push_back(Entry{a_label, n + 1, n, w * std::sqrt(n + 1.0)});
        w *= t;
      }
    }
    return;
  }
  // Dual rail: logical 0 = |1,0>, logical 1 = |0,1>, each mode through its
  // own squeezer at the same r; partner indices mirror the receiver pair.
  if (logical == 0) {
    double dn = scale * inv_c2;
    for (int n = 0; n + 1 < n_dim; ++n) {
      const double d = dn * std::sqrt(n + 1.0);
      double cm = inv_c;
      for (int m = 0; m < n_dim; ++m) {
        out.push_back(Entry{a_label, (n + 1) * n_dim + m, n * n_dim + m,
                            d * cm});
        cm *= t;
      }
      dn *= t;
    }
  } else {
    double cn = scale * inv_c;
    for (int n = 0; n < n_dim; ++n) {
      double dm = inv_c2;
      for (int m = 0; m + 1 < n_dim; ++m) {
        out.push_back(Entry{a_label, n * n_dim + (m + 1), n * n_dim + m,
                            cn * dm * std::sqrt(m + 1.0)});
        dm *= t;
      }
      cn *= t;
    }
  }
}

Components build_components(const Preparation& prep, Encoding enc,
                            Protocol proto, const SqueezingParameter& r,
                            int n_dim) {
  const double t = std::tanh(r.r);
  const double c = std::cosh(r.r);
  const double alpha = std::sqrt(prep.alpha_sq);
  const double beta = std::sqrt(prep.beta_sq());
  Components comps;
  if (proto == Protocol::quantum) {
    Component comp;
    if (alpha > 0.0) append_logical(comp, enc, 0, 0, alpha, t, c, n_dim);
    if (beta > 0.0) append_logical(comp, enc, 1, 1, beta, t, c, n_dim);
    comps.push_back(std::move(comp));
  } else {
    if (alpha > 0.0) {
      Component c0;
      append_logical(c0, enc, 0, 0, alpha, t, c, n_dim);
      comps.push_back(std::move(c0));
    }
    if (beta > 0.0) {
      Component c1;
      append_logical(c1, enc, 1, 1, beta, t, c, n_dim);
      comps.push_back(std::move(c1));
    }
  }
  return comps;
}

struct Row {
  std::int64_t key;
  double amp;
  std::int32_t group;
  std::int32_t root;
};

std::int32_t dsu_find(std::vector<std::int32_t>& parent, std::int32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Streams the diagonal blocks of the requested marginal.  Every traced-index
// group of a component contributes one outer product; groups that touch a
// common kept index are merged (union-find) into one block, which is handed
// to `sink(keys, dense, s)` as a dense column-major s x s matrix.
template <typename Sink>
void for_each_block(Components& comps, Keep keep, Sink&& sink) {
  std::size_t total = 0;
  for (const Component& comp : comps) total += comp.size();
  std::vector<Row> rows;
  rows.reserve(total);
  std::int32_t group_count = 0;
  for (Component& comp : comps) {
    std::sort(comp.begin(), comp.end(),
              [keep](const Entry& x, const Entry& y) {
                return traced_key(x, keep) < traced_key(y, keep);
              });
    std::size_t i = 0;
    while (i < comp.size()) {
      const std::int64_t g = traced_key(comp[i], keep);
      const std::int32_t gid = group_count++;
      while (i < comp.size() && traced_key(comp[i], keep) == g) {
        rows.push_back(Row{kept_key(comp[i], keep), comp[i].amp, gid, 0});
        ++i;
      }
    }
  }

  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return x.key < y.key || (x.key == y.key && x.group < y.group);
  });
  std::vector<std::int32_t> parent(group_count);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i + 1;
    std::int32_t root = dsu_find(parent, rows[i].group);
    while (j < rows.size() && rows[j].key == rows[i].key) {
      std::int32_t other = dsu_find(parent, rows[j].group);
      if (other != root) {
        if (other < root) std::swap(root, other);
        parent[other] = root;
      }
      ++j;
    }
    i = j;
  }
  for (Row& row : rows) row.root = dsu_find(parent, row.group);
  parent.clear();
  parent.shrink_to_fit();

  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    if (x.root != y.root) return x.root < y.root;
    if (x.group != y.group) return x.group < y.group;
    return x.key < y.key;
  });

  std::vector<std::int64_t> keys;
  std::vector<double> dense;
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    while (j < rows.size() && rows[j].root == rows[i].root) ++j;
    keys.clear();
    for (std::size_t k = i; k < j; ++k) keys.push_back(rows[k].key);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    const int s = static_cast<int>(keys.size());
    dense.assign(static_cast<std::size_t>(s) * s, 0.0);
    std::size_t g0 = i;
    while (g0 < j) {
      std::size_t g1 = g0;
      while (g1 < j && rows[g1].group == rows[g0].group) ++g1;
      for (std::size_t p = g0; p < g1; ++p) {
        const int ip = static_cast<int>(
            std::lower_bound(keys.begin(), keys.end(), rows[p].key) -
            keys.begin());
        for (std::size_t q = g0; q < g1; ++q) {
          const int iq = static_cast<int>(
              std::lower_bound(keys.begin(), keys.end(), rows[q].key) -
              keys.begin());
          dense[static_cast<std::size_t>(iq) * s + ip] +=
              rows[p].amp * rows[q].amp;
        }
      }
      g0 = g1;
    }
    sink(keys.data(), dense.data(), s);
    i = j;
  }
}

// Collects trace and entropy from streamed block eigenvalues.
class SpectrumAccumulator {
 public:
  void consume(const double* dense, int s) {
    if (s == 1) {
      add(dense[0]);
    } else if (s == 2) {
      const double a = dense[0];
      const double b = dense[1];
      const double c = dense[3];
      const double half_tr = 0.5 * (a + c);
      const double disc =
          std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
      add(half_tr + disc);
      add(half_tr - disc);
    } else {
      Eigen::Map<const Eigen::MatrixXd> m(dense, s, s);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          m, Eigen::EigenvaluesOnly);
      for (int k = 0; k < s; ++k) add(es.eigenvalues()(k));
    }
  }

  double trace() const { return trace_.value(); }
  double entropy_bits() const { return entropy_.value(); }

 private:
  void add(double lam) {
    trace_.add(lam);
    if (lam < -fock::kNegativeEigenvalueLimit) {
      throw PositivityError(
          "oracle marginal has a significantly negative eigenvalue");
    }
    if (lam > fock::kEigenvalueClip) entropy_.add(-lam * std::log2(lam));
  }

  series::KahanSum trace_;
  series::KahanSum entropy_;
};

double marginal_entropy(Components& comps, Keep keep,
                        const fock::TruncationPolicy& policy, int fock_dim) {
  SpectrumAccumulator acc;
  for_each_block(comps, keep,
                 [&](const std::int64_t*, const double* dense, int s) {
                   acc.consume(dense, s);
                 });
  const double deficit = std::fabs(1.0 - acc.trace());
  if (deficit > 100.0 * policy.tail_epsilon + 1e-12) {
    throw TruncationError(
        "oracle truncation too coarse: marginal trace deficit " +
            std::to_string(deficit),
        std::min(2 * fock_dim, policy.max_dim));
  }
  return acc.entropy_bits();
}

void check_dims(const SqueezingParameter& r, int fock_dim,
                const fock::TruncationPolicy& policy) {
  r.validate();
  policy.validate();
  if (fock_dim < 2) throw InputError("fock_dim must be >= 2");
  if (fock_dim > policy.max_dim) {
    throw CapacityError("fock_dim exceeds the truncation policy cap");
  }
}

// Sorted (index, weight) diagonal of one logical output; structural error if
// a block turns out non-diagonal.
std::vector<std::pair<std::int64_t, double>> logical_output_diagonal(
    Encoding enc, const SqueezingParameter& r, int logical, int n_dim) {
  Components comps = build_components(
      Preparation{logical == 0 ? 1.0 : 0.0}, enc, Protocol::classical, r,
      n_dim);
  std::vector<std::pair<std::int64_t, double>> diag;
  for_each_block(comps, Keep::receiver,
                 [&](const std::int64_t* keys, const double* dense, int s) {
                   if (s != 1) {
                     throw StructuralError(
                         "logical channel output expected to be diagonal");
                   }
                   diag.emplace_back(keys[0], dense[0]);
                 });
  std::sort(diag.begin(), diag.end());
  return diag;
}

double oracle_mutual_info(const Preparation& prep, Encoding enc,
                          Protocol proto, const SqueezingParameter& r,
                          int fock_dim, const fock::TruncationPolicy& policy) {
  const OracleEntropies e =
      oracle_entropies(prep, enc, proto, r, fock_dim, policy);
  return e.sender_bits + e.receiver_bits - e.joint_bits;
}

}  // namespace

OracleEntropies oracle_entropies(const Preparation& prep, Encoding encoding,
                                 Protocol protocol,
                                 const SqueezingParameter& r, int fock_dim,
                                 const fock::TruncationPolicy& policy) {
  prep.validate();
  check_dims(r, fock_dim, policy);
  Components comps = build_components(prep, encoding, protocol, r, fock_dim);
  OracleEntropies out;
  out.joint_bits =
      marginal_entropy(comps, Keep::sender_receiver, policy, fock_dim);
  out.receiver_bits = marginal_entropy(comps, Keep::receiver, policy, fock_dim);
  out.sender_bits = marginal_entropy(comps, Keep::sender, policy, fock_dim);
  out.environment_bits =
      marginal_entropy(comps, Keep::environment, policy, fock_dim);
  return out;
}

double oracle_fidelity(Encoding encoding, const SqueezingParameter& r,
                       int fock_dim, const fock::TruncationPolicy& policy) {
  check_dims(r, fock_dim, policy);
  const auto p = logical_output_diagonal(encoding, r, 0, fock_dim);
  const auto q = logical_output_diagonal(encoding, r, 1, fock_dim);
  series::KahanSum overlap;
  series::KahanSum trace_p;
  series::KahanSum trace_q;
  for (const auto& [key, val] : p) trace_p.add(val);
  for (const auto& [key, val] : q) trace_q.add(val);
  for (double deficit : {std::fabs(1.0 - trace_p.value()),
                         std::fabs(1.0 - trace_q.value())}) {
    if (deficit > 100.0 * policy.tail_epsilon + 1e-12) {
      throw TruncationError(
          "oracle truncation too coarse: output trace deficit " +
              std::to_string(deficit),
          std::min(2 * fock_dim, policy.max_dim));
    }
  }
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < p.size() && j < q.size()) {
    if (p[i].first < q[j].first) {
      ++i;
    } else if (q[j].first < p[i].first) {
      ++j;
    } else {
      if (p[i].second > 0.0 && q[j].second > 0.0) {
        overlap.add(std::sqrt(p[i].second * q[j].second));
      }
      ++i;
      ++j;
    }
  }
  const double root = overlap.value();
  return root * root;
}

closed_form::ChannelQuantities oracle_quantities(
    const Preparation& prep, Encoding encoding, Protocol protocol,
    const SqueezingParameter& r, int fock_dim,
    const fock::TruncationPolicy& policy) {
  prep.validate();
  check_dims(r, fock_dim, policy);
  const OracleEntropies ent =
      oracle_entropies(prep, encoding, protocol, r, fock_dim, policy);
  closed_form::ChannelQuantities q;
  q.source_entropy_bits = fock::binary_entropy(prep.alpha_sq);
  q.mutual_info_bits = ent.sender_bits + ent.receiver_bits - ent.joint_bits;
  q.conditional_entropy_bits = ent.joint_bits - ent.receiver_bits;
  q.coherent_info_bits = -q.conditional_entropy_bits;
  q.fidelity = oracle_fidelity(encoding, r, fock_dim, policy);
  if (protocol == Protocol::classical) {
    if (encoding == Encoding::single_rail) {
      q.capacity_bits =
          series::golden_section_max(
              [&](double a2) {
                return oracle_mutual_info(Preparation{a2}, encoding, protocol,
                                          r, fock_dim, policy);
              },
              0.0, 1.0, 1e-8)
              .max_value;
    } else if (prep.alpha_sq == 0.5) {
      q.capacity_bits = q.mutual_info_bits;  // symmetric optimum
    } else {
      q.capacity_bits = oracle_mutual_info(Preparation{0.5}, encoding,
                                           protocol, r, fock_dim, policy);
    }
  } else {
    if (prep.alpha_sq == 0.5) {
      q.capacity_bits = q.coherent_info_bits;
    } else {
      const OracleEntropies sym = oracle_entropies(
          Preparation{0.5}, encoding, protocol, r, fock_dim, policy);
      q.capacity_bits = sym.receiver_bits - sym.joint_bits;
    }
  }
  return q;
}

VerificationReport verify_point(const Preparation& prep, Encoding encoding,
                                Protocol protocol,
                                const SqueezingParameter& r, double tolerance,
                                const closed_form::SeriesConfig& cfg) {
  prep.validate();
  r.validate();
  cfg.validate();
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be > 0");

  fock::TruncationPolicy policy;
  if (encoding == Encoding::dual_rail && r.r > 2.5) {
    // Beyond r ~ 2.5 the two-mode truncation would otherwise outgrow memory;
    // the spot checks run with a relaxed tail and tolerance.
    policy.tail_epsilon = 1e-9;
  }
  const int n1 = unruh::adaptive_fock_dim(r, policy);
  const int n2 = std::min(2 * n1, policy.max_dim);

  VerificationReport rep;
  rep.point = VerificationPoint{r.r, prep.alpha_sq, encoding, protocol};
  rep.truncation_dim = n1;
  rep.tolerance = tolerance;

  const auto o1 = oracle_quantities(prep, encoding, protocol, r, n1, policy);
  const auto o2 = oracle_quantities(prep, encoding, protocol, r, n2, policy);
  const auto s = closed_form::derived_quantities(prep, encoding, protocol, r,
                                                 cfg);
  const auto put = [&rep](const char* name, double series_v, double v1,
                          double v2) {
    rep.series_deltas[name] = std::fabs(series_v - v1);
    rep.doubling_deltas[name] = std::fabs(v1 - v2);
  };
  put("fidelity", s.fidelity, o1.fidelity, o2.fidelity);
  put("mutual_info_bits", s.mutual_info_bits, o1.mutual_info_bits,
      o2.mutual_info_bits);
  put("conditional_entropy_bits", s.conditional_entropy_bits,
      o1.conditional_entropy_bits, o2.conditional_entropy_bits);
  put("capacity_bits", s.capacity_bits, o1.capacity_bits, o2.capacity_bits);
  put("coherent_info_bits", s.coherent_info_bits, o1.coherent_info_bits,
      o2.coherent_info_bits);

  bool ok = true;
  for (const auto& [name, delta] : rep.series_deltas) {
    const double limit =
        name == std::string("fidelity") ? tolerance / 100.0 : tolerance;
    ok = ok && delta <= limit;
  }
  for (const auto& [name, delta] : rep.doubling_deltas) {
    ok = ok && delta <= tolerance;
  }
  rep.passed = ok;
  return rep;
}

std::vector<VerificationPoint> default_grid() {
  const double rs[] = {0.1, 0.25, 0.5, 1.0, 1.5, 2.0};
  const double alphas[] = {0.25, 0.5, 0.75};
  std::vector<VerificationPoint> grid;
  for (double r : rs) {
    for (double a2 : alphas) {
      for (Encoding enc : {Encoding::single_rail, Encoding::dual_rail}) {
        for (Protocol proto : {Protocol::classical, Protocol::quantum}) {
          grid.push_back(VerificationPoint{r, a2, enc, proto});
        }
      }
    }
  }
  // Larger squeezing is spot-checked at the symmetric preparation only.
  for (Encoding enc : {Encoding::single_rail, Encoding::dual_rail}) {
    for (Protocol proto : {Protocol::classical, Protocol::quantum}) {
      grid.push_back(VerificationPoint{3.0, 0.5, enc, proto});
    }
  }
  return grid;
}

}  // namespace horizon::oracle
