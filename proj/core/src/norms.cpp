#include "mixnorm/norms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "mixnorm/exponents.hpp"

namespace mixnorm::norms {

namespace {

void validate_slot_exponent(double p, const char* who) {
    if (std::isnan(p) || p < 2.0)
        throw std::invalid_argument(std::string(who) + ": exponent must be >= 2 or inf");
}

// Flat nonzero list with 0-based coordinates per slot; the uniform input
// of both engines regardless of the tensor's storage.
struct EntryList {
    int arity = 0;
    std::vector<std::int64_t> dims;
    std::vector<double> values;
    std::vector<std::int32_t> coords;  // stride = arity
};

EntryList flatten(const forms::CoefficientTensor& form) {
    EntryList list;
    list.arity = form.arity();
    list.dims = form.dims();
    const forms::CoefficientTensor source =
        form.is_sparse() ? form : form.sparsified();
    const auto& entries = source.sparse_entries();
    list.values.reserve(entries.size());
    list.coords.reserve(entries.size() * static_cast<std::size_t>(list.arity));
    for (const auto& e : entries) {
        list.values.push_back(e.value);
        for (std::int64_t ix : e.index)
            list.coords.push_back(static_cast<std::int32_t>(ix - 1));
    }
    return list;
}

// ---------------------------------------------------------------------------
// Exact engine: Gray-code enumeration over the sign vectors of slots 2..m.
// ---------------------------------------------------------------------------

// Precomputed geometry of the reduced sign space. Sign coordinates of
// slots 2..m are concatenated into one array; coordinate 0 of every slot
// stays pinned to +1 and the remaining ones are the free Gray bits.
struct SignLayout {
    int bits = 0;
    std::int64_t dim1 = 0;
    std::vector<std::int32_t> slot_offset;    // per slot 2..m, offset into the sign array
    std::vector<std::int32_t> bit_position;   // per free bit, its sign-array position
    std::int32_t total_positions = 0;
};

SignLayout make_layout(const EntryList& list) {
    SignLayout layout;
    layout.dim1 = list.dims[0];
    layout.slot_offset.resize(static_cast<std::size_t>(list.arity), 0);
    for (int j = 1; j < list.arity; ++j) {
        layout.slot_offset[static_cast<std::size_t>(j)] = layout.total_positions;
        layout.total_positions += static_cast<std::int32_t>(list.dims[static_cast<std::size_t>(j)]);
    }
    for (int j = 1; j < list.arity; ++j)
        for (std::int64_t c = 1; c < list.dims[static_cast<std::size_t>(j)]; ++c)
            layout.bit_position.push_back(layout.slot_offset[static_cast<std::size_t>(j)] +
                                          static_cast<std::int32_t>(c));
    layout.bits = static_cast<int>(layout.bit_position.size());
    return layout;
}

// Per-entry sign positions (slots 2..m), plus per-bit slices: the entries
// whose coordinate matches the flipped one, with the *other* slots' sign
// positions laid out flat for the incremental update.
struct ExactTables {
    std::vector<std::int32_t> entry_positions;  // stride = arity - 1
    struct Slice {
        std::vector<double> values;
        std::vector<std::int32_t> i1;
        std::vector<std::int32_t> other_positions;  // stride = arity - 2
    };
    std::vector<Slice> slices;  // one per free bit
};

ExactTables make_tables(const EntryList& list, const SignLayout& layout) {
    ExactTables tables;
    const int m = list.arity;
    const std::size_t nnz = list.values.size();
    tables.entry_positions.reserve(nnz * static_cast<std::size_t>(m - 1));
    for (std::size_t e = 0; e < nnz; ++e)
        for (int j = 1; j < m; ++j)
            tables.entry_positions.push_back(
                layout.slot_offset[static_cast<std::size_t>(j)] +
                list.coords[e * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)]);

    tables.slices.resize(static_cast<std::size_t>(layout.bits));
    for (int b = 0; b < layout.bits; ++b) {
        const std::int32_t flip_pos = layout.bit_position[static_cast<std::size_t>(b)];
        auto& slice = tables.slices[static_cast<std::size_t>(b)];
        for (std::size_t e = 0; e < nnz; ++e) {
            const std::int32_t* pos = tables.entry_positions.data() + e * static_cast<std::size_t>(m - 1);
            bool hit = false;
            for (int l = 0; l < m - 1; ++l)
                hit = hit || pos[l] == flip_pos;
            if (!hit)
                continue;
            slice.values.push_back(list.values[e]);
            slice.i1.push_back(list.coords[e * static_cast<std::size_t>(m)]);
            for (int l = 0; l < m - 1; ++l)
                if (pos[l] != flip_pos)
                    slice.other_positions.push_back(pos[l]);
        }
    }
    return tables;
}

void fresh_contraction(const EntryList& list, const ExactTables& tables,
                       const std::vector<double>& sgn, std::vector<double>& c) {
    std::fill(c.begin(), c.end(), 0.0);
    const int m = list.arity;
    for (std::size_t e = 0; e < list.values.size(); ++e) {
        double term = list.values[e];
        const std::int32_t* pos = tables.entry_positions.data() + e * static_cast<std::size_t>(m - 1);
        for (int l = 0; l < m - 1; ++l)
            term *= sgn[static_cast<std::size_t>(pos[l])];
        c[static_cast<std::size_t>(list.coords[e * static_cast<std::size_t>(m)])] += term;
    }
}

double sign_power_sum(const std::vector<double>& c, double pstar) {
    double sum = 0.0;
    if (pstar == 1.0) {
        for (double v : c)
            sum += std::abs(v);
    } else if (pstar == 2.0) {
        for (double v : c)
            sum += v * v;
    } else {
        for (double v : c)
            sum += std::pow(std::abs(v), pstar);
    }
    return sum;
}

void apply_gray_code(std::uint64_t config, const SignLayout& layout,
                     std::vector<double>& sgn) {
    std::fill(sgn.begin(), sgn.end(), 1.0);
    const std::uint64_t gray = config ^ (config >> 1);
    for (int b = 0; b < layout.bits; ++b)
        if (gray & (std::uint64_t{1} << b))
            sgn[static_cast<std::size_t>(layout.bit_position[static_cast<std::size_t>(b)])] = -1.0;
}

struct SegmentBest {
    double power_sum = -1.0;
    std::uint64_t config = 0;
};

// Walks configs [begin, end) in global Gray order. The contraction is
// refreshed from scratch every 8192 steps to keep incremental rounding
// drift well under certificate tolerances.
SegmentBest run_segment(const EntryList& list, const SignLayout& layout,
                        const ExactTables& tables, double pstar,
                        std::uint64_t begin, std::uint64_t end) {
    const int m = list.arity;
    std::vector<double> sgn(static_cast<std::size_t>(layout.total_positions));
    std::vector<double> c(static_cast<std::size_t>(layout.dim1));
    apply_gray_code(begin, layout, sgn);
    fresh_contraction(list, tables, sgn, c);

    SegmentBest best{sign_power_sum(c, pstar), begin};
    for (std::uint64_t t = begin + 1; t < end; ++t) {
        const int b = std::countr_zero(t);
        const auto& slice = tables.slices[static_cast<std::size_t>(b)];
        const std::int32_t flip_pos = layout.bit_position[static_cast<std::size_t>(b)];
        const double flipped = -sgn[static_cast<std::size_t>(flip_pos)];
        sgn[static_cast<std::size_t>(flip_pos)] = flipped;
        if ((t & 0x1FFF) == 0) {
            fresh_contraction(list, tables, sgn, c);
        } else {
            const double scale = 2.0 * flipped;
            const std::int32_t* other = slice.other_positions.data();
            for (std::size_t e = 0; e < slice.values.size(); ++e) {
                double term = slice.values[e];
                for (int l = 0; l < m - 2; ++l)
                    term *= sgn[static_cast<std::size_t>(other[l])];
                other += m - 2;
                c[static_cast<std::size_t>(slice.i1[e])] += scale * term;
            }
        }
        const double sum = sign_power_sum(c, pstar);
        if (sum > best.power_sum) {
            best.power_sum = sum;
            best.config = t;
        }
    }
    return best;
}

}  // namespace

DualWitness dual_norm_witness(std::span<const double> coefficients, double p) {
    validate_slot_exponent(p, "dual_norm_witness");
    DualWitness out;
    out.witness.resize(coefficients.size());
    if (is_infinite_exponent(p)) {
        double sum = 0.0;
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
            sum += std::abs(coefficients[i]);
            out.witness[i] = coefficients[i] < 0.0 ? -1.0 : 1.0;
        }
        out.value = sum;
        return out;
    }
    const double pstar = conjugate_exponent(p);
    double power_sum = 0.0;
    for (double v : coefficients)
        power_sum += std::pow(std::abs(v), pstar);
    if (power_sum == 0.0) {
        out.value = 0.0;
        return out;  // witness stays the zero vector
    }
    out.value = std::pow(power_sum, 1.0 / pstar);
    const double denom = std::pow(out.value, pstar - 1.0);
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const double magnitude = std::pow(std::abs(coefficients[i]), pstar - 1.0) / denom;
        out.witness[i] = coefficients[i] < 0.0 ? -magnitude : magnitude;
    }
    return out;
}

NormCertificate exact_norm(const forms::CoefficientTensor& form, double p,
                           const ExactNormOptions& options) {
    validate_slot_exponent(p, "exact_norm");
    const EntryList list = flatten(form);
    const SignLayout layout = make_layout(list);
    if (layout.bits >= 63 ||
        (std::uint64_t{1} << layout.bits) > std::max<std::uint64_t>(options.budget, 1))
        throw BudgetExceededError(
            "exact_norm: reduced sign space needs 2^" + std::to_string(layout.bits) +
            " configurations, over the budget of " + std::to_string(options.budget));
    const std::uint64_t count = std::uint64_t{1} << layout.bits;
    const ExactTables tables = make_tables(list, layout);
    const double pstar = conjugate_exponent(p);

    int workers = std::max(options.workers, 1);
    if (count < 4096)
        workers = 1;
    workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), count));

    SegmentBest best;
    if (workers == 1) {
        best = run_segment(list, layout, tables, pstar, 0, count);
    } else {
        std::vector<SegmentBest> results(static_cast<std::size_t>(workers));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const std::uint64_t chunk = count / static_cast<std::uint64_t>(workers);
        const std::uint64_t rem = count % static_cast<std::uint64_t>(workers);
        std::uint64_t begin = 0;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t end = begin + chunk + (static_cast<std::uint64_t>(w) < rem ? 1 : 0);
            pool.emplace_back([&, w, begin, end] {
                results[static_cast<std::size_t>(w)] =
                    run_segment(list, layout, tables, pstar, begin, end);
            });
            begin = end;
        }
        for (auto& t : pool)
            t.join();
        best = results.front();
        for (const SegmentBest& r : results)
            if (r.power_sum > best.power_sum ||
                (r.power_sum == best.power_sum && r.config < best.config))
                best = r;
    }

    // Re-derive the winning configuration from scratch so the certified
    // value carries no incremental rounding.
    std::vector<double> sgn(static_cast<std::size_t>(layout.total_positions));
    std::vector<double> c(static_cast<std::size_t>(layout.dim1));
    apply_gray_code(best.config, layout, sgn);
    fresh_contraction(list, tables, sgn, c);
    DualWitness dual = dual_norm_witness(c, p);

    NormCertificate cert;
    cert.value = dual.value;
    cert.kind = CertificateKind::Exact;
    cert.evaluations = count;
    cert.witnesses.reserve(static_cast<std::size_t>(list.arity));
    cert.witnesses.push_back(std::move(dual.witness));
    for (int j = 1; j < list.arity; ++j) {
        const std::int32_t off = layout.slot_offset[static_cast<std::size_t>(j)];
        const std::int64_t d = list.dims[static_cast<std::size_t>(j)];
        cert.witnesses.emplace_back(sgn.begin() + off, sgn.begin() + off + d);
    }
    return cert;
}

NormCertificate ascent_norm(const forms::CoefficientTensor& form,
                            const forms::SpaceSignature& space, int restarts,
                            int max_iters, double tol, std::uint64_t seed) {
    if (static_cast<int>(space.exponents.size()) != form.arity())
        throw std::invalid_argument("ascent_norm: signature length must equal arity");
    if (restarts < 1)
        throw std::invalid_argument("ascent_norm: restarts must be at least 1");
    if (max_iters < 1)
        throw std::invalid_argument("ascent_norm: max_iters must be at least 1");
    if (!(tol > 0.0))
        throw std::invalid_argument("ascent_norm: tol must be positive");

    const EntryList list = flatten(form);
    const int m = list.arity;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    std::vector<std::vector<double>> point(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        point[static_cast<std::size_t>(j)].resize(
            static_cast<std::size_t>(list.dims[static_cast<std::size_t>(j)]));

    auto chain_start = [&] {
        // x_1 = e1 and x_j = e1 + e2 elsewhere, normalized into each ball;
        // on the extremal family this start already evaluates to 2^(m-1).
        for (int j = 0; j < m; ++j) {
            auto& x = point[static_cast<std::size_t>(j)];
            std::fill(x.begin(), x.end(), 0.0);
            const double pj = space.exponents[static_cast<std::size_t>(j)];
            if (j == 0 || x.size() < 2) {
                x[0] = 1.0;
            } else if (is_infinite_exponent(pj)) {
                x[0] = x[1] = 1.0;
            } else {
                x[0] = x[1] = std::exp2(-1.0 / pj);
            }
        }
    };
    auto random_start = [&] {
        for (int j = 0; j < m; ++j) {
            auto& x = point[static_cast<std::size_t>(j)];
            const double pj = space.exponents[static_cast<std::size_t>(j)];
            if (is_infinite_exponent(pj)) {
                for (double& v : x)
                    v = unif(rng) < 0.0 ? -1.0 : 1.0;
                continue;
            }
            double power_sum = 0.0;
            for (double& v : x) {
                v = unif(rng);
                power_sum += std::pow(std::abs(v), pj);
            }
            if (power_sum == 0.0) {
                x[0] = 1.0;
                continue;
            }
            const double norm = std::pow(power_sum, 1.0 / pj);
            for (double& v : x)
                v /= norm;
        }
    };

    std::vector<double> g;
    std::uint64_t evaluations = 0;
    NormCertificate best;
    best.value = -1.0;

    for (int r = 0; r < restarts; ++r) {
        if (r == 0)
            chain_start();
        else
            random_start();
        double prev = -1.0;
        double current = 0.0;
        for (int iter = 0; iter < max_iters; ++iter) {
            for (int j = 0; j < m; ++j) {
                g.assign(static_cast<std::size_t>(list.dims[static_cast<std::size_t>(j)]), 0.0);
                for (std::size_t e = 0; e < list.values.size(); ++e) {
                    const std::int32_t* coord = list.coords.data() + e * static_cast<std::size_t>(m);
                    double term = list.values[e];
                    for (int l = 0; l < m; ++l)
                        if (l != j)
                            term *= point[static_cast<std::size_t>(l)]
                                         [static_cast<std::size_t>(coord[l])];
                    g[static_cast<std::size_t>(coord[j])] += term;
                }
                DualWitness dual =
                    dual_norm_witness(g, space.exponents[static_cast<std::size_t>(j)]);
                point[static_cast<std::size_t>(j)] = std::move(dual.witness);
                current = dual.value;
                ++evaluations;
            }
            if (prev >= 0.0 && current <= prev * (1.0 + tol))
                break;
            prev = current;
        }
        if (current > best.value) {
            best.value = current;
            best.witnesses = point;
        }
    }

    best.kind = CertificateKind::LowerBound;
    best.evaluations = evaluations;
    // The certified value is the direct evaluation at the witnesses.
    best.value = forms::evaluate(form, best.witnesses);
    return best;
}

}  // namespace mixnorm::norms
