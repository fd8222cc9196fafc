#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "troupes/multipoly.hpp"
#include "troupes/partition.hpp"
#include "troupes/series.hpp"
#include "troupes/troupe.hpp"
#include "troupes/vhc.hpp"

namespace troupes {

enum class SeqKind { moments, classical, free_cumulants };

inline std::string to_string(SeqKind k) {
    switch (k) {
        case SeqKind::moments: return "moments";
        case SeqKind::classical: return "classical";
        case SeqKind::free_cumulants: return "free";
    }
    throw std::logic_error("unreachable");
}

inline SeqKind seq_kind_from_string(const std::string& s) {
    if (s == "moments") return SeqKind::moments;
    if (s == "classical") return SeqKind::classical;
    if (s == "free") return SeqKind::free_cumulants;
    throw std::invalid_argument("unknown sequence kind: " + s);
}

/// A 1-indexed sequence of moments or cumulants with polynomial values.
struct CumulantSequence {
    SeqKind kind = SeqKind::moments;
    std::vector<MultiPoly> values;  // values[i] holds u_{i+1}

    int length() const { return static_cast<int>(values.size()); }

    const MultiPoly& at(int n) const {
        if (n < 1 || n > length()) throw std::invalid_argument("sequence index out of range");
        return values[n - 1];
    }

    static CumulantSequence of(SeqKind kind, std::vector<MultiPoly> values) {
        return CumulantSequence{kind, std::move(values)};
    }

    static CumulantSequence constants(SeqKind kind, const std::vector<Rational>& values) {
        CumulantSequence s{kind, {}};
        for (const Rational& v : values) s.values.push_back(MultiPoly::constant(v));
        return s;
    }

    bool operator==(const CumulantSequence& o) const {
        return kind == o.kind && values == o.values;
    }
};

enum class ConvertMethod {
    lattice,
    recursion,
    lehner,
    josuat,
    vhc,
    nc_linext,
    avoid231,
    series_log,
};

inline ConvertMethod convert_method_from_string(const std::string& s) {
    if (s == "lattice") return ConvertMethod::lattice;
    if (s == "recursion") return ConvertMethod::recursion;
    if (s == "lehner") return ConvertMethod::lehner;
    if (s == "josuat") return ConvertMethod::josuat;
    if (s == "vhc") return ConvertMethod::vhc;
    if (s == "nc_linext") return ConvertMethod::nc_linext;
    if (s == "avoid231") return ConvertMethod::avoid231;
    if (s == "series_log") return ConvertMethod::series_log;
    throw std::invalid_argument("unknown conversion method: " + s);
}

struct ConvertCaps {
    int partition_n = kPartitionAllCap;
    int noncrossing_n = kPartitionNoncrossingCap;
    int vhc_n = kVhcCap;
};

/// (u_.)_rho: the product of u_{|B|} over the blocks of rho.
inline MultiPoly partition_product(const std::vector<MultiPoly>& u, const SetPartition& rho) {
    MultiPoly acc = MultiPoly::constant(1);
    for (const auto& b : rho.blocks()) {
        size_t k = b.size();
        if (k < 1 || k > u.size()) throw std::invalid_argument("sequence too short for partition");
        acc *= u[k - 1];
    }
    return acc;
}

namespace detail {

// Suppress the sign on every value: (-u)_n = -u_n.
inline std::vector<MultiPoly> negated(const std::vector<MultiPoly>& u) {
    std::vector<MultiPoly> out;
    out.reserve(u.size());
    for (const auto& p : u) out.push_back(-p);
    return out;
}

// forward sum over a partition family: out_n = sum over family(n) of (u_.)_rho
template <typename Family>
std::vector<MultiPoly> lattice_forward(const std::vector<MultiPoly>& u, Family&& family) {
    std::vector<MultiPoly> out;
    for (int n = 1; n <= static_cast<int>(u.size()); ++n) {
        MultiPoly acc;
        for (const SetPartition& rho : family(n)) acc += partition_product(u, rho);
        out.push_back(acc);
    }
    return out;
}

// triangular inversion: find v with u_n = sum over family(n) of (v_.)_rho,
// where family(n) always contains the one-block partition
template <typename Family>
std::vector<MultiPoly> lattice_backward(const std::vector<MultiPoly>& u, Family&& family) {
    std::vector<MultiPoly> v;
    for (int n = 1; n <= static_cast<int>(u.size()); ++n) {
        MultiPoly rest;
        for (const SetPartition& rho : family(n)) {
            if (rho.num_blocks() == 1) continue;
            rest += partition_product(v, rho);  // blocks all smaller than n
        }
        v.push_back(u[n - 1] - rest);
    }
    return v;
}

// classical <-> moments by the binomial recursion
// m_n = sum_{j=1}^n binom(n-1, j-1) c_j m_{n-j}, with m_0 = 1.
inline std::vector<MultiPoly> classical_to_moments_rec(const std::vector<MultiPoly>& c) {
    int N = static_cast<int>(c.size());
    std::vector<MultiPoly> m(N + 1);  // m[0] = 1
    m[0] = MultiPoly::constant(1);
    for (int n = 1; n <= N; ++n) {
        MultiPoly acc;
        for (int j = 1; j <= n; ++j)
            acc += Rational(binomial(n - 1, j - 1)) * (c[j - 1] * m[n - j]);
        m[n] = acc;
    }
    return std::vector<MultiPoly>(m.begin() + 1, m.end());
}

inline std::vector<MultiPoly> moments_to_classical_rec(const std::vector<MultiPoly>& mm) {
    int N = static_cast<int>(mm.size());
    std::vector<MultiPoly> m(N + 1), c(N + 1);
    m[0] = MultiPoly::constant(1);
    for (int n = 1; n <= N; ++n) m[n] = mm[n - 1];
    for (int n = 1; n <= N; ++n) {
        MultiPoly acc;
        for (int j = 1; j <= n - 1; ++j)
            acc += Rational(binomial(n - 1, j - 1)) * (c[j] * m[n - j]);
        c[n] = m[n] - acc;
    }
    return std::vector<MultiPoly>(c.begin() + 1, c.end());
}

// Power table for the free recursion: W[s][t] = [z^t] M(z)^s with
// M = 1 + m_1 z + m_2 z^2 + ...; filled along diagonals s + t = n so that
// entry (s, t) only ever reads moments m_i with i <= t.
struct MomentPowerTable {
    std::vector<std::vector<MultiPoly>> w;  // w[s][t]
    explicit MomentPowerTable(int N) : w(N + 1) {
        for (int s = 0; s <= N; ++s) w[s].assign(N - s + 1, MultiPoly());
        for (size_t s = 0; s < w.size(); ++s)
            if (!w[s].empty()) w[s][0] = MultiPoly::constant(1);
    }
    // fill all entries with s + t == n (s >= 1, t >= 1) given m_0..m_{n-1}
    void fill_diagonal(int n, const std::vector<MultiPoly>& m) {
        for (int s = 1; s <= n - 1; ++s) {
            int t = n - s;
            MultiPoly acc;
            for (int i = 0; i <= t; ++i) {
                const MultiPoly& prev = w[s - 1][t - i];
                if (prev.is_zero() || m[i].is_zero()) continue;
                acc += m[i] * prev;
            }
            w[s][t] = acc;
        }
    }
};

// free <-> moments by the nested recursion m_n = sum_s kappa_s [z^{n-s}] M(z)^s.
inline std::vector<MultiPoly> free_to_moments_rec(const std::vector<MultiPoly>& kappa) {
    int N = static_cast<int>(kappa.size());
    std::vector<MultiPoly> m(N + 1);
    m[0] = MultiPoly::constant(1);
    MomentPowerTable W(N);
    for (int n = 1; n <= N; ++n) {
        W.fill_diagonal(n, m);
        MultiPoly acc;
        for (int s = 1; s <= n; ++s) {
            if (kappa[s - 1].is_zero() || W.w[s][n - s].is_zero()) continue;
            acc += kappa[s - 1] * W.w[s][n - s];
        }
        m[n] = acc;
    }
    return std::vector<MultiPoly>(m.begin() + 1, m.end());
}

inline std::vector<MultiPoly> moments_to_free_rec(const std::vector<MultiPoly>& mm) {
    int N = static_cast<int>(mm.size());
    std::vector<MultiPoly> m(N + 1), kappa(N + 1);
    m[0] = MultiPoly::constant(1);
    for (int n = 1; n <= N; ++n) m[n] = mm[n - 1];
    MomentPowerTable W(N);
    for (int n = 1; n <= N; ++n) {
        W.fill_diagonal(n, m);
        MultiPoly acc;
        for (int s = 1; s <= n - 1; ++s) {
            if (kappa[s].is_zero() || W.w[s][n - s].is_zero()) continue;
            acc += kappa[s] * W.w[s][n - s];
        }
        kappa[n] = m[n] - acc;  // [z^0] M^n = 1
    }
    return std::vector<MultiPoly>(kappa.begin() + 1, kappa.end());
}

// moments <-> classical through exact log/exp series arithmetic
inline std::vector<MultiPoly> moments_to_classical_series(const std::vector<MultiPoly>& m) {
    int N = static_cast<int>(m.size());
    TruncatedSeries M(N);
    for (int n = 1; n <= N; ++n) M.set_coeff(n, m[n - 1]);
    TruncatedSeries cegf = log1p(ogf_egf(M, EgfDirection::to_egf));
    TruncatedSeries cogf = ogf_egf(cegf, EgfDirection::to_ogf);
    std::vector<MultiPoly> out;
    for (int n = 1; n <= N; ++n) out.push_back(cogf.coeff(n));
    return out;
}

inline std::vector<MultiPoly> classical_to_moments_series(const std::vector<MultiPoly>& c) {
    int N = static_cast<int>(c.size());
    TruncatedSeries C(N);
    for (int n = 1; n <= N; ++n) C.set_coeff(n, c[n - 1]);
    TruncatedSeries megf = exp_series(ogf_egf(C, EgfDirection::to_egf)) -
                           TruncatedSeries::constant(1, N);
    TruncatedSeries mogf = ogf_egf(megf, EgfDirection::to_ogf);
    std::vector<MultiPoly> out;
    for (int n = 1; n <= N; ++n) out.push_back(mogf.coeff(n));
    return out;
}

}  // namespace detail

/// Convert between moments, classical cumulants, and free cumulants by the
/// requested route. Routes implemented per source/target pair:
///   moments <-> classical : lattice, recursion, series_log
///   moments <-> free      : lattice, recursion
///   classical -> free     : lehner
///   free -> classical     : josuat, vhc, nc_linext, avoid231
inline CumulantSequence convert(const CumulantSequence& seq, SeqKind target, ConvertMethod method,
                                const ConvertCaps& caps = {}) {
    const std::vector<MultiPoly>& u = seq.values;
    int N = seq.length();
    auto bad_pair = [&]() -> std::invalid_argument {
        return std::invalid_argument("method not applicable to conversion " +
                                     to_string(seq.kind) + " -> " + to_string(target));
    };
    if (seq.kind == target) throw std::invalid_argument("source and target kinds coincide");

    auto all_parts = [&](int n) { return enumerate_partitions(n, PartitionKind::all, caps.partition_n); };
    auto nc_parts = [&](int n) {
        return enumerate_partitions(n, PartitionKind::noncrossing, caps.noncrossing_n);
    };

    std::vector<MultiPoly> out;
    switch (method) {
        case ConvertMethod::lattice:
            if (seq.kind == SeqKind::classical && target == SeqKind::moments)
                out = detail::lattice_forward(u, all_parts);
            else if (seq.kind == SeqKind::moments && target == SeqKind::classical)
                out = detail::lattice_backward(u, all_parts);
            else if (seq.kind == SeqKind::free_cumulants && target == SeqKind::moments)
                out = detail::lattice_forward(u, nc_parts);
            else if (seq.kind == SeqKind::moments && target == SeqKind::free_cumulants)
                out = detail::lattice_backward(u, nc_parts);
            else
                throw bad_pair();
            break;
        case ConvertMethod::recursion:
            if (seq.kind == SeqKind::classical && target == SeqKind::moments)
                out = detail::classical_to_moments_rec(u);
            else if (seq.kind == SeqKind::moments && target == SeqKind::classical)
                out = detail::moments_to_classical_rec(u);
            else if (seq.kind == SeqKind::free_cumulants && target == SeqKind::moments)
                out = detail::free_to_moments_rec(u);
            else if (seq.kind == SeqKind::moments && target == SeqKind::free_cumulants)
                out = detail::moments_to_free_rec(u);
            else
                throw bad_pair();
            break;
        case ConvertMethod::series_log:
            if (seq.kind == SeqKind::moments && target == SeqKind::classical)
                out = detail::moments_to_classical_series(u);
            else if (seq.kind == SeqKind::classical && target == SeqKind::moments)
                out = detail::classical_to_moments_series(u);
            else
                throw bad_pair();
            break;
        case ConvertMethod::lehner: {
            if (!(seq.kind == SeqKind::classical && target == SeqKind::free_cumulants))
                throw bad_pair();
            for (int n = 1; n <= N; ++n) {
                MultiPoly acc;
                for (const SetPartition& rho :
                     enumerate_partitions(n, PartitionKind::connected, caps.partition_n))
                    acc += partition_product(u, rho);
                out.push_back(acc);
            }
            break;
        }
        case ConvertMethod::josuat: {
            if (!(seq.kind == SeqKind::free_cumulants && target == SeqKind::classical))
                throw bad_pair();
            std::vector<MultiPoly> neg = detail::negated(u);
            for (int n = 1; n <= N; ++n) {
                MultiPoly acc;
                for (const SetPartition& rho :
                     enumerate_partitions(n, PartitionKind::connected, caps.partition_n)) {
                    Integer t = tutte_point(crossing_graph(rho), rho.block_index_of(n));
                    acc += Rational(t) * partition_product(neg, rho);
                }
                out.push_back(-acc);  // the sum gives -c_n
            }
            break;
        }
        case ConvertMethod::vhc: {
            if (!(seq.kind == SeqKind::free_cumulants && target == SeqKind::classical))
                throw bad_pair();
            std::vector<MultiPoly> neg = detail::negated(u);
            for (int n = 1; n <= N; ++n) {
                MultiPoly acc;
                for_each_vhc_all(n, VhcRestrict::none,
                                 [&](const ValidHookConfiguration& h) {
                                     acc += partition_product(neg, coloring(h).vertical);
                                 },
                                 caps.vhc_n);
                out.push_back(-acc);
            }
            break;
        }
        case ConvertMethod::nc_linext: {
            if (!(seq.kind == SeqKind::free_cumulants && target == SeqKind::classical))
                throw bad_pair();
            std::vector<MultiPoly> neg = detail::negated(u);
            for (int n = 1; n <= N; ++n) {
                MultiPoly acc;
                for (const SetPartition& eta : nc_parts(n)) {
                    Integer lc = psi_image_multiplicity(eta);
                    if (lc == 0) continue;
                    acc += Rational(lc) * partition_product(neg, eta);
                }
                out.push_back(-acc);
            }
            break;
        }
        case ConvertMethod::avoid231: {
            if (!(seq.kind == SeqKind::free_cumulants && target == SeqKind::classical))
                throw bad_pair();
            std::vector<MultiPoly> neg = detail::negated(u);
            for (int n = 1; n <= N; ++n) {
                MultiPoly acc;
                for_each_vhc_all(n, VhcRestrict::avoid231,
                                 [&](const ValidHookConfiguration& h) {
                                     acc += Rational(tree_hook_count(h.base())) *
                                            partition_product(neg, coloring(h).horizontal);
                                 },
                                 caps.vhc_n);
                out.push_back(-acc);
            }
            break;
        }
    }
    return CumulantSequence{target, std::move(out)};
}

/// Two-leg conversion through moments via the uncapped recursion routes;
/// used where enumeration caps would bind.
inline CumulantSequence convert_via_recursion(const CumulantSequence& seq, SeqKind target) {
    if (seq.kind == target) return seq;
    if (seq.kind == SeqKind::moments || target == SeqKind::moments)
        return convert(seq, target, ConvertMethod::recursion);
    CumulantSequence m = convert(seq, SeqKind::moments, ConvertMethod::recursion);
    return convert(m, target, ConvertMethod::recursion);
}

struct CheckReport {
    bool ok = true;
    std::string detail;
};

/// Check the compositional-inverse relation between the R-transform and the
/// moment series, R^{<-1>}(z)/(1+z) = M^{<-1>}(z), to order N. Requires
/// kappa_1 != 0 and m_1 != 0 (and rational values); otherwise the inverse is
/// branch-ambiguous and the lattice-sum conversions must be used instead.
/// This is a verification identity only, never the conversion engine.
inline bool verify_r_transform_relation(const CumulantSequence& kappa, const CumulantSequence& m,
                                        int N) {
    if (kappa.kind != SeqKind::free_cumulants || m.kind != SeqKind::moments)
        throw std::invalid_argument("expects a free-cumulant and a moment sequence");
    if (kappa.length() < N || m.length() < N)
        throw std::invalid_argument("sequences shorter than the requested order");
    auto as_series = [&](const CumulantSequence& s, const char* label) {
        TruncatedSeries out(N);
        for (int n = 1; n <= N; ++n) {
            if (!s.at(n).is_constant())
                throw unsupported_error(std::string(label) +
                                        " must have rational values for the inverse relation; "
                                        "use the lattice-sum conversions instead");
            out.set_coeff(n, s.at(n));
        }
        return out;
    };
    TruncatedSeries R = as_series(kappa, "free cumulants");
    TruncatedSeries M = as_series(m, "moments");
    if (R.coeff(1).constant_value() == 0 || M.coeff(1).constant_value() == 0)
        throw unsupported_error(
            "kappa_1 and m_1 must be nonzero (single-branch inverse regime); use the "
            "lattice-sum conversions instead");
    TruncatedSeries lhs = comp_inverse(R);
    TruncatedSeries one_plus_z = TruncatedSeries::constant(1, N) + TruncatedSeries::z(N);
    return lhs / one_plus_z == comp_inverse(M);
}

/// The troupe/cumulant correspondence: free cumulants counting the troupe's
/// trees by insertion-additive statistics map to classical cumulants
/// counting the standardized decreasing versions of the same trees.
inline CheckReport troupe_correspondence_check(const TroupeSpec& spec,
                                               const std::vector<TreeStatistic>& stats, int N,
                                               int troupe_cap = kTroupeCap) {
    CumulantSequence kappa{SeqKind::free_cumulants, {}};
    for (int n = 1; n <= N; ++n)
        kappa.values.push_back(-g_polynomial(spec, n - 1, stats, troupe_cap));
    CumulantSequence c = convert_via_recursion(kappa, SeqKind::classical);
    for (int n = 1; n <= N; ++n) {
        MultiPoly expected(static_cast<int>(stats.size()));
        for (const DTree& t : enumerate_decreasing(spec, n - 1, troupe_cap))
            expected += stat_monomial(skel(t), stats);
        if (c.at(n) != -expected) {
            return CheckReport{false,
                               "mismatch at n=" + std::to_string(n) + ": converted c_n = " +
                                   c.at(n).to_string() + ", tree enumeration gives " +
                                   (-expected).to_string()};
        }
    }
    return CheckReport{true, "free->classical correspondence verified for n <= " + std::to_string(N)};
}

/// The counterexample showing the troupe hypothesis is necessary: for the
/// set of all (colored-as-black) branches, -c_4 = 5 while there are only 4
/// standardized decreasing branch trees with 3 vertices.
inline CheckReport non_troupe_counterexample_check() {
    // kappa_1 = -1 (the empty tree is a branch), kappa_n = -2^(n-2) for n >= 2
    CumulantSequence kappa{SeqKind::free_cumulants, {}};
    kappa.values.push_back(MultiPoly::constant(-1));
    for (int n = 2; n <= 4; ++n)
        kappa.values.push_back(MultiPoly::constant(-Rational(int_pow(Integer(2), n - 2))));
    CumulantSequence c = convert(kappa, SeqKind::classical, ConvertMethod::vhc);
    Rational minus_c4 = (-c.at(4)).constant_value();

    // decreasing all-black branch trees with 3 vertices, by direct count
    long branch_count = 0;
    for (const Tree& shape : realize_generators({0, 0, 0, 4}, RealizationStyle::black_shapes)) {
        detail::FlatTree ft;
        ft.add(shape, -1);
        std::vector<int> label(3, 0), frontier{0};
        std::vector<DTree> ls;
        detail::decreasing_labelings(ft, 3, label, frontier, ls);
        branch_count += static_cast<long>(ls.size());
    }

    CheckReport r;
    r.ok = (minus_c4 == 5) && (branch_count == 4) && (minus_c4 != branch_count);
    r.detail = "-c_4 = " + minus_c4.str() + ", |decreasing branch trees on 3 vertices| = " +
               std::to_string(branch_count) + (r.ok ? " (mismatch as expected)" : " (unexpected)");
    return r;
}

}  // namespace troupes
