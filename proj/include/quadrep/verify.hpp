#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "quadrep/quadrep.hpp"

namespace quadrep::verify {

struct CriterionResult {
    std::string id;
    std::string title;
    bool pass = false;
    std::int64_t checks = 0;
    std::int64_t failures = 0;
    std::string detail;  ///< first failure, or a summary when everything passed
    double seconds = 0.0;
};

/// Counts checks and keeps the first failure message.
class Tally {
public:
    void check(bool ok, const std::function<std::string()>& describe)
    {
        ++checks_;
        if (!ok) {
            if (failures_ == 0)
                first_ = describe();
            ++failures_;
        }
    }

    CriterionResult finish(std::string id, std::string title, double seconds) const
    {
        CriterionResult r{std::move(id), std::move(title), failures_ == 0, checks_, failures_, first_, seconds};
        if (r.pass)
            r.detail = std::to_string(checks_) + " checks";
        return r;
    }

private:
    std::int64_t checks_ = 0;
    std::int64_t failures_ = 0;
    std::string first_;
};

struct Fixture {
    std::string label;
    FracIdeal ideal;
};

inline std::int64_t smallest_split_prime(const Discriminant& D)
{
    for (std::int64_t p = 2;; ++p)
        if (is_prime(p) && D.chi(p) == Sign::plus())
            return p;
}

/// O_K, the smallest split prime, its square, its inverse, a scaled copy, a
/// ramified prime and one prime ideal for every genus.
inline std::vector<Fixture> fixture_ideals(const Discriminant& D, const Limits& lim = {})
{
    std::vector<Fixture> out;
    auto add = [&](std::string label, const FracIdeal& I) {
        for (const auto& f : out)
            if (f.ideal == I)
                return;
        out.push_back({std::move(label), I});
    };
    add("ok", FracIdeal::unit(D));
    const std::int64_t p = smallest_split_prime(D);
    const FracIdeal P = prime_above(D, p).front().ideal;
    add("P" + std::to_string(p), P);
    add("P" + std::to_string(p) + "^2", ideal_pow(P, 2));
    add("P" + std::to_string(p) + "^-1", inverse(P));
    add("3/2*P" + std::to_string(p), FracIdeal(Rational(3, 2) * P.scale(), P.prim()));
    const std::int64_t r = D.ramified_primes().front();
    add("R" + std::to_string(r), prime_above(D, r).front().ideal);

    std::vector<GenusFingerprint> missing = possible_fingerprints(D);
    for (const auto& f : out)
        std::erase(missing, genus_fingerprint(f.ideal, lim));
    for (std::int64_t q = 2; q < 1000 && !missing.empty(); ++q) {
        if (!is_prime(q) || D.chi(q) != Sign::plus())
            continue;
        const FracIdeal Q = prime_above(D, q).front().ideal;
        const auto fp = genus_fingerprint(Q, lim);
        if (std::erase(missing, fp) > 0)
            add("P" + std::to_string(q), Q);
    }
    if (!missing.empty())
        throw SearchFailure("fixture_ideals: no prime ideal found for some genus of D = " + std::to_string(D.value()));
    return out;
}

inline std::vector<std::int64_t> prime_powers_upto(std::int64_t bound)
{
    std::vector<std::int64_t> out;
    for (std::int64_t n = 2; n <= bound; ++n)
        if (factorize(n).size() == 1)
            out.push_back(n);
    return out;
}

inline bool rel_close(double x, double y, double tol)
{
    return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline std::string ideal_tag(const Discriminant& D, const Fixture& f)
{
    return "D=" + std::to_string(D.value()) + " " + f.label + " (" + format_ideal(f.ideal) + ")";
}

} // namespace detail

inline const std::vector<std::int64_t>& oracle_discriminants()
{
    static const std::vector<std::int64_t> ds{5, 13, 17, 21, 33, 57};
    return ds;
}

// A1: closed counts against enumeration, b <= 60, |m| <= 30.
inline CriterionResult criterion_a1(const Limits& lim = {})
{
    const auto t0 = detail::Clock::now();
    Tally t;
    for (std::int64_t d : oracle_discriminants()) {
        const Discriminant D(d, lim);
        for (const auto& f : fixture_ideals(D, lim)) {
            for (std::int64_t b = 1; b <= 60; ++b) {
                const NormProfile prof = residue_norm_profile(f.ideal, b, lim);
                for (std::int64_t m = -30; m <= 30; ++m) {
                    const std::int64_t formula = rep_count(RepQuery{f.ideal, m, b}, lim);
                    const std::int64_t brute = prof.at(m);
                    t.check(formula == brute, [&] {
                        return detail::ideal_tag(D, f) + " b=" + std::to_string(b) + " m=" + std::to_string(m) +
                               ": formula " + std::to_string(formula) + " vs enumeration " + std::to_string(brute);
                    });
                }
            }
        }
    }
    return t.finish("A1", "representation counts: closed formula = enumeration", detail::since(t0));
}

// A2: closed Gauss sums against direct sums, p^beta <= 343, |a| <= 50; classical sums for odd c <= 99.
inline CriterionResult criterion_a2(const Limits& lim = {})
{
    const auto t0 = detail::Clock::now();
    Tally t;
    const auto moduli = prime_powers_upto(343);
    for (std::int64_t d : oracle_discriminants()) {
        const Discriminant D(d, lim);
        for (const auto& f : fixture_ideals(D, lim)) {
            for (std::int64_t q : moduli) {
                const auto pp = factorize(q).factors().front();
                const FracIdeal closed_ideal = (D.ramifies(pp.prime) && !coprime_to_prime(f.ideal, pp.prime))
                                                   ? coprime_genus_representative(f.ideal, D.value(), lim)
                                                   : f.ideal;
                const NormProfile prof = residue_norm_profile(f.ideal, q, lim);
                for (std::int64_t a = -50; a <= 50; ++a) {
                    const auto direct = eval_complex(gauss_from_profile(prof, floor_mod(a, q)));
                    const auto closed = gauss_closed(closed_ideal, a, pp.prime, pp.exponent).to_complex();
                    const double err = std::abs(direct - closed);
                    t.check(err <= 1e-6, [&] {
                        std::ostringstream os;
                        os << detail::ideal_tag(D, f) << " q=" << q << " a=" << a << ": direct " << direct
                           << " vs closed " << closed;
                        return os.str();
                    });
                }
            }
        }
    }
    for (std::int64_t c = 1; c <= 99; c += 2) {
        for (std::int64_t a = -50; a <= 50; ++a) {
            if (std::gcd(a, c) != 1)
                continue;
            const auto g = classical_gauss(a, c);
            const double err = std::abs(eval_complex(g.direct) - g.closed.to_complex());
            t.check(err <= 1e-6, [&] {
                return "classical c=" + std::to_string(c) + " a=" + std::to_string(a) + ": error " +
                       std::to_string(err);
            });
        }
    }
    return t.finish("A2", "Gauss sums: closed form = direct sum", detail::since(t0));
}

// A3: inverse transform of the Gauss sums recovers the counts, p^beta <= 343.
inline CriterionResult criterion_a3(const Limits& lim = {})
{
    const auto t0 = detail::Clock::now();
    Tally t;
    double worst = 0.0;
    for (std::int64_t d : oracle_discriminants()) {
        const Discriminant D(d, lim);
        for (const auto& f : fixture_ideals(D, lim)) {
            for (std::int64_t q : prime_powers_upto(343)) {
                const NormProfile prof = residue_norm_profile(f.ideal, q, lim);
                const auto table = gauss_table(prof);
                for (std::int64_t m = 0; m < q; ++m) {
                    DftReconstruction rec;
                    bool ok = true;
                    try {
                        rec = dft_reconstruct(table, m, 1e-6);
                    } catch (const ConsistencyError&) {
                        ok = false;
                    }
                    worst = std::max(worst, rec.residual);
                    t.check(ok && rec.value == prof.at(m), [&] {
                        return detail::ideal_tag(D, f) + " q=" + std::to_string(q) + " m=" + std::to_string(m) +
                               ": reconstructed " + std::to_string(rec.value) + " vs " + std::to_string(prof.at(m));
                    });
                }
            }
        }
    }
    auto r = t.finish("A3", "Gauss-sum inversion = enumeration", detail::since(t0));
    if (r.pass) {
        std::ostringstream os;
        os << r.detail << ", max residual " << worst;
        r.detail = os.str();
    }
    return r;
}

// A4: three forms of sigma, functional equation, vanishing, sign identity, product = decomposition sum.
inline CriterionResult criterion_a4(const Limits& lim = {})
{
    const auto t0 = detail::Clock::now();
    Tally t;
    const std::vector<double> svals{-3, -1, 0, 0.5, 1, 2, 3};
    for (std::int64_t d : {5, 21, 33, 105}) {
        const Discriminant D(d, lim);
        for (const auto& fp : possible_fingerprints(D)) {
            const std::string tag = "D=" + std::to_string(d) + " fp=" + fp.str();
            for (std::int64_t m = -30; m <= 30; ++m) {
                if (m == 0)
                    continue;
                const std::string mtag = tag + " m=" + std::to_string(m);
                for (double s : svals) {
                    const SigmaQuery q{fp, m, s};
                    const double def = sigma_def(q, lim);
                    const double dec = sigma_decomp(q, lim);
                    const double eul = sigma_euler(q, lim);
                    const double neg = sigma_def(SigmaQuery{fp, m, -s}, lim);
                    t.check(rel_close(def, dec, 1e-12) && rel_close(def, eul, 1e-12), [&] {
                        std::ostringstream os;
                        os.precision(17);
                        os << mtag << " s=" << s << ": def " << def << " decomp " << dec << " euler " << eul;
                        return os.str();
                    });
                    t.check(rel_close(def, neg, 1e-12), [&] {
                        std::ostringstream os;
                        os.precision(17);
                        os << mtag << " s=" << s << ": sigma(s) " << def << " vs sigma(-s) " << neg;
                        return os.str();
                    });
                }
                {
                    // sigma(0) alone can vanish by accident (inert p with odd exponent in m).
                    const bool vanishes = sigma_vanishes(fp, m);
                    const double v0 = sigma_def(SigmaQuery{fp, m, 0.0}, lim);
                    const double v1 = sigma_def(SigmaQuery{fp, m, 1.0}, lim);
                    t.check(vanishes == (std::abs(v0) < 1e-12 && std::abs(v1) < 1e-12), [&] {
                        return mtag + ": sigma_vanishes " + (vanishes ? "true" : "false") + " but sigma(0) = " +
                               std::to_string(v0) + ", sigma(1) = " + std::to_string(v1);
                    });
                }
                for (double s : {0.0, 1.0, 2.0}) {
                    const double prod = d_factor_product(fp, m, s);
                    const double sum = d_factor_decomp_sum(fp, m, s, lim);
                    t.check(rel_close(prod, sum, 1e-12), [&] {
                        return mtag + " s=" + std::to_string(s) + ": product " + std::to_string(prod) +
                               " vs decomposition sum " + std::to_string(sum);
                    });
                }
            }
            if (d == 5)
                continue;
            for (const auto& dec : disc_decompositions(D)) {
                for (std::int64_t m = -50; m <= 50; ++m) {
                    if (m == 0 || moebius(m < 0 ? -m : m, lim).is_zero())
                        continue;
                    const auto [left, right] = ramified_sign_product(fp, dec.D2, m);
                    t.check(left == right, [&] {
                        return tag + " D2=" + std::to_string(dec.D2) + " m=" + std::to_string(m) +
                               ": sign product sides differ";
                    });
                }
            }
        }
    }
    return t.finish("A4", "generalized divisor sum identities", detail::since(t0));
}

inline std::vector<Fixture> genus_fixtures(const Discriminant& D, const Limits& lim = {})
{
    std::vector<Fixture> out{{"ok", FracIdeal::unit(D)}};
    std::vector<GenusFingerprint> seen{genus_fingerprint(out.front().ideal, lim)};
    for (const auto& f : fixture_ideals(D, lim)) {
        const auto fp = genus_fingerprint(f.ideal, lim);
        if (std::find(seen.begin(), seen.end(), fp) == seen.end()) {
            seen.push_back(fp);
            out.push_back(f);
        }
    }
    return out;
}

inline CriterionResult theorem_grid(std::string id, std::string title, const std::vector<std::int64_t>& ms,
                                    const std::vector<std::pair<double, std::int64_t>>& runs, double tol,
                                    const Limits& lim)
{
    const auto t0 = detail::Clock::now();
    Tally t;
    for (std::int64_t d : {5, 21}) {
        const Discriminant D(d, lim);
        for (const auto& f : genus_fixtures(D, lim)) {
            for (std::int64_t m : ms) {
                for (const auto& [s, B] : runs) {
                    const auto rep = verify_theorem(f.ideal, m, s, B, tol, LhsMode::formula, lim);
                    t.check(rep.pass, [&] {
                        std::ostringstream os;
                        os.precision(12);
                        os << detail::ideal_tag(D, f) << " m=" << m << " s=" << s << " B=" << B << ": lhs "
                           << rep.lhs.value << " rhs " << rep.rhs.value << " diff " << rep.difference << " tol "
                           << rep.tolerance;
                        return os.str();
                    });
                }
            }
        }
    }
    return t.finish(std::move(id), std::move(title), detail::since(t0));
}

// A5: series identity for m != 0.
inline CriterionResult criterion_a5(const Limits& lim = {})
{
    const std::vector<std::int64_t> ms{1, -1, 2, -2, 3, 4, 5};
    auto r4 = theorem_grid("A5", "series identity, m != 0", ms, {{4.0, 5000}}, 1e-3, lim);
    auto r3 = theorem_grid("A5", "series identity, m != 0", ms, {{3.0, 50000}}, 1e-2, lim);
    CriterionResult r = r4;
    r.pass = r4.pass && r3.pass;
    r.checks = r4.checks + r3.checks;
    r.failures = r4.failures + r3.failures;
    r.seconds = r4.seconds + r3.seconds;
    r.detail = !r4.pass ? r4.detail : !r3.pass ? r3.detail : std::to_string(r.checks) + " checks";
    return r;
}

// A6: series identity for m = 0.
inline CriterionResult criterion_a6(const Limits& lim = {})
{
    return theorem_grid("A6", "series identity, m = 0", {0}, {{4.0, 5000}}, 1e-3, lim);
}

// A7: equal fingerprints give equal norm profiles for b <= 40.
inline CriterionResult criterion_a7(const Limits& lim = {})
{
    const auto t0 = detail::Clock::now();
    Tally t;
    for (std::int64_t d : oracle_discriminants()) {
        const Discriminant D(d, lim);
        std::vector<Fixture> pool = fixture_ideals(D, lim);
        const std::size_t base = pool.size();
        for (std::size_t i = 0; i < base; ++i) {
            pool.push_back({pool[i].label + "'", conjugate(pool[i].ideal)});
            pool.push_back({pool[i].label + "*P", mul_ideals(pool[i].ideal, pool[1].ideal)});
        }
        std::map<std::string, std::vector<const Fixture*>> by_genus;
        for (const auto& f : pool)
            by_genus[genus_fingerprint(f.ideal, lim).str()].push_back(&f);
        for (const auto& [fp, group] : by_genus) {
            for (std::int64_t b = 1; b <= 40; ++b) {
                const NormProfile ref = residue_norm_profile(group.front()->ideal, b, lim);
                for (std::size_t k = 1; k < group.size(); ++k) {
                    t.check(residue_norm_profile(group[k]->ideal, b, lim) == ref, [&] {
                        return "D=" + std::to_string(d) + " genus " + fp + " b=" + std::to_string(b) + ": " +
                               group.front()->label + " and " + group[k]->label + " differ";
                    });
                }
            }
        }
    }
    return t.finish("A7", "norm profile depends only on the genus", detail::since(t0));
}

// A8: closed Euler factors against partial sums of the prime-power counts.
inline CriterionResult criterion_a8(const Limits& lim = {})
{
    const auto t0 = detail::Clock::now();
    Tally t;
    for (std::int64_t d : oracle_discriminants()) {
        const Discriminant D(d, lim);
        for (const auto& f : fixture_ideals(D, lim)) {
            const auto fp = GenusCache::global().get(f.ideal, lim);
            for (std::int64_t p = 2; p <= 50; ++p) {
                if (!is_prime(p))
                    continue;
                std::optional<Sign> na;
                if (D.ramifies(p))
                    na = fp.at(p);
                for (std::int64_t m = -30; m <= 30; ++m) {
                    for (double s : {3.0, 4.0}) {
                        const SeriesEval direct = euler_factor_direct(D, p, m, na, s);
                        const double closed =
                            na ? euler_factor_ramified(D, p, m, *na, s) : euler_factor_unramified(D, p, m, s);
                        const double err = std::abs(direct.value - closed);
                        t.check(err <= direct.tail_bound + 1e-12 * std::abs(closed), [&] {
                            std::ostringstream os;
                            os.precision(15);
                            os << detail::ideal_tag(D, f) << " p=" << p << " m=" << m << " s=" << s << ": closed "
                               << closed << " direct " << direct.value << " tail " << direct.tail_bound;
                            return os.str();
                        });
                    }
                }
            }
        }
    }
    return t.finish("A8", "Euler factors: closed form = partial sum", detail::since(t0));
}

// A9: extrapolated (s - 2) * rhs at s -> 2 against the explicit residue.
inline CriterionResult criterion_a9(const Limits& lim = {})
{
    const auto t0 = detail::Clock::now();
    Tally t;
    const Discriminant D(5, lim);
    const auto fp = genus_fingerprint(FracIdeal::unit(D), lim);
    constexpr std::int64_t B = 200000;
    std::ostringstream summary;
    summary.precision(8);
    for (std::int64_t m : {1, 4}) {
        const double extrap = residue_extrapolated(fp, m, B, lim);
        const double exact = residue_at_2(fp, m, B, lim).value;
        summary << " m=" << m << ": " << extrap << " vs " << exact << ";";
        t.check(std::abs(extrap - exact) <= 0.01 * std::abs(exact), [&] {
            std::ostringstream os;
            os << "D=5 m=" << m << ": extrapolated " << extrap << " vs residue " << exact;
            return os.str();
        });
    }
    auto r = t.finish("A9", "residue at s = 2", detail::since(t0));
    if (r.pass)
        r.detail += summary.str();
    return r;
}

using Criterion = CriterionResult (*)(const Limits&);

inline const std::vector<std::pair<std::string, std::vector<Criterion>>>& suites()
{
    static const std::vector<std::pair<std::string, std::vector<Criterion>>> s{
        {"oracle", {criterion_a1, criterion_a3, criterion_a7}},
        {"gauss", {criterion_a2}},
        {"sigma", {criterion_a4}},
        {"theorem", {criterion_a5, criterion_a6, criterion_a8, criterion_a9}},
    };
    return s;
}

inline std::vector<Criterion> all_criteria()
{
    return {criterion_a1, criterion_a2, criterion_a3, criterion_a4, criterion_a5,
            criterion_a6, criterion_a7, criterion_a8, criterion_a9};
}

} // namespace quadrep::verify
