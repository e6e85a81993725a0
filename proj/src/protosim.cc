#include "zkdistill/protosim.h"

#include <algorithm>
#include <bit>
#include <thread>

#include "zkdistill/distillation.h"

namespace zkd {

namespace {

void apply_op(const Op &op, PauliFrame &frame, BitVector &flips, size_t &next_measurement) {
    if (op.condition) {
        bool control_flipped = flips.get(*op.condition);
        size_t q = op.qubits[0];
        if (op.kind == OpKind::x || op.kind == OpKind::z) {
            if (control_flipped) {
                (op.kind == OpKind::x ? frame.x : frame.z).flip(q);
            }
            return;
        }
        bool touched = false;
        for (size_t t : op.qubits) {
            touched = touched || frame.x.get(t) || frame.z.get(t);
        }
        if (control_flipped || touched) {
            throw DomainError("frame through conditioned " + op_mnemonic(op) + " depends on the outcome");
        }
        if (op.kind == OpKind::measure_x || op.kind == OpKind::measure_z) {
            ++next_measurement;
        }
        return;
    }
    switch (op.kind) {
        case OpKind::prep_zero:
        case OpKind::prep_plus:
            frame.x.set(op.qubits[0], false);
            frame.z.set(op.qubits[0], false);
            break;
        case OpKind::cnot: {
            size_t c = op.qubits[0];
            for (size_t i = 1; i < op.qubits.size(); ++i) {
                size_t t = op.qubits[i];
                if (frame.x.get(c)) {
                    frame.x.flip(t);
                }
                if (frame.z.get(t)) {
                    frame.z.flip(c);
                }
            }
            break;
        }
        case OpKind::h: {
            size_t q = op.qubits[0];
            bool x = frame.x.get(q);
            frame.x.set(q, frame.z.get(q));
            frame.z.set(q, x);
            break;
        }
        case OpKind::s:
        case OpKind::s_dag:
            if (frame.x.get(op.qubits[0])) {
                frame.z.flip(op.qubits[0]);
            }
            break;
        case OpKind::x:
        case OpKind::z:
            break;
        case OpKind::measure_x:
        case OpKind::measure_z: {
            size_t q = op.qubits[0];
            bool flipped = op.kind == OpKind::measure_x ? frame.z.get(q) : frame.x.get(q);
            flips.set(next_measurement++, flipped);
            frame.x.set(q, false);
            frame.z.set(q, false);
            break;
        }
        case OpKind::inject_zk: {
            size_t q = op.qubits[0];
            if (!frame.x.get(q)) {
                break;
            }
            if (op.k == 1) {
                frame.z.flip(q);
            } else if (op.k >= 2) {
                throw DomainError("X error reaches a non-Clifford Z_" + std::to_string(op.k) + " injection on qubit " +
                                  std::to_string(q));
            }
            break;
        }
    }
}

std::vector<size_t> support(const BitVector &v) {
    std::vector<size_t> out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v.get(i)) {
            out.push_back(i);
        }
    }
    return out;
}

BitVector find_logical_x(const CssCode &code) {
    size_t n = code.n();
    RowEchelon z = row_reduce(code.hz());
    RowEchelon x = row_reduce(code.hx());
    std::vector<bool> is_pivot(n, false);
    for (size_t p : z.pivot_columns) {
        is_pivot[p] = true;
    }
    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        BitVector v = BitVector::unit(n, f);
        for (size_t i = 0; i < z.rank; ++i) {
            if (z.reduced.get(i, f)) {
                v.set(z.pivot_columns[i], true);
            }
        }
        if (!in_rowspan(x, v)) {
            return v;
        }
    }
    throw DomainError("code has no logical X operator");
}

bool spans_equal(const std::vector<BitVector> &images, const BitMatrix &checks) {
    size_t n = checks.col_count();
    BitMatrix image_matrix(images, n);
    RowEchelon reference = row_reduce(checks);
    if (image_matrix.rank() != images.size() || images.size() != reference.rank) {
        return false;
    }
    return std::all_of(images.begin(), images.end(), [&](const BitVector &v) { return in_rowspan(reference, v); });
}

constexpr unsigned kBadBit = 62;
constexpr unsigned kOutputXBit = 61;
constexpr size_t kMaxDetectors = 60;

uint64_t signature(const ProtocolCircuit &protocol, const FrameResult &result) {
    uint64_t sig = 0;
    for (size_t d = 0; d < protocol.detectors.size(); ++d) {
        bool parity = false;
        for (size_t m : protocol.detectors[d]) {
            parity ^= result.measurement_flips.get(m);
        }
        if (parity) {
            sig |= uint64_t{1} << d;
        }
    }
    bool obs = false;
    for (size_t m : protocol.observable) {
        obs ^= result.measurement_flips.get(m);
    }
    if (obs != result.output.z.get(protocol.output_qubit)) {
        sig |= uint64_t{1} << kBadBit;
    }
    if (result.output.x.get(protocol.output_qubit)) {
        sig |= uint64_t{1} << kOutputXBit;
    }
    return sig;
}

constexpr uint64_t kSyndromeMask = (uint64_t{1} << kMaxDetectors) - 1;

void tally(uint64_t sig, size_t weight, PatternCounts &counts) {
    if ((sig & kSyndromeMask) != 0) {
        return;
    }
    ++counts.accepted[weight];
    if (sig >> kOutputXBit) {
        ++counts.accepted_bad[weight];
    }
}

uint64_t pattern_signature(const ProtocolCircuit &protocol, const std::vector<ErrorSite> &sites, uint64_t pattern) {
    std::vector<PauliInsertion> insertions;
    for (size_t i = 0; i < sites.size(); ++i) {
        if ((pattern >> i) & 1U) {
            insertions.push_back(PauliInsertion{sites[i].after_op, sites[i].qubit, false, true});
        }
    }
    PauliFrame start(protocol.circuit.qubit_count());
    return signature(protocol, propagate_frame(protocol.circuit, start, insertions));
}

template <typename Body>
void run_partitioned(uint64_t total, size_t degree, size_t sites, std::vector<PatternCounts> &partials, Body body) {
    degree = std::max<size_t>(1, std::min<uint64_t>(degree, total));
    partials.assign(degree, PatternCounts{std::vector<uint64_t>(sites + 1, 0), std::vector<uint64_t>(sites + 1, 0)});
    std::vector<std::thread> workers;
    uint64_t chunk = total / degree;
    for (size_t t = 0; t < degree; ++t) {
        uint64_t from = t * chunk;
        uint64_t to = t + 1 == degree ? total : from + chunk;
        if (degree == 1) {
            body(from, to, partials[t]);
        } else {
            workers.emplace_back([&, from, to, t] { body(from, to, partials[t]); });
        }
    }
    for (auto &w : workers) {
        w.join();
    }
}

}  // namespace

FrameResult propagate_frame(const CliffordCircuit &circuit, const PauliFrame &initial) {
    return propagate_frame(circuit, initial, {});
}

FrameResult propagate_frame(const CliffordCircuit &circuit, const PauliFrame &initial,
                            const std::vector<PauliInsertion> &insertions) {
    size_t n = circuit.qubit_count();
    if (initial.x.size() != n || initial.z.size() != n) {
        throw DomainError("frame length does not match the circuit's qubit count");
    }
    circuit.validate();
    std::vector<PauliInsertion> pending = insertions;
    std::stable_sort(pending.begin(), pending.end(), [](const PauliInsertion &a, const PauliInsertion &b) {
        // kBeforeAll is the largest size_t; map it below op 0.
        return a.after_op + 1 < b.after_op + 1;
    });
    FrameResult result{BitVector(circuit.measurement_count()), initial};
    size_t cursor = 0;
    auto insert_through = [&](size_t op_index) {
        while (cursor < pending.size() && pending[cursor].after_op + 1 == op_index + 1) {
            const PauliInsertion &p = pending[cursor++];
            if (p.qubit >= n) {
                throw DomainError("insertion qubit out of range");
            }
            if (p.x) {
                result.output.x.flip(p.qubit);
            }
            if (p.z) {
                result.output.z.flip(p.qubit);
            }
        }
    };
    insert_through(PauliInsertion::kBeforeAll);
    size_t next_measurement = 0;
    const auto &ops = circuit.ops();
    for (size_t i = 0; i < ops.size(); ++i) {
        apply_op(ops[i], result.output, result.measurement_flips, next_measurement);
        insert_through(i);
    }
    if (cursor != pending.size()) {
        throw DomainError("insertion refers to an op past the end of the circuit");
    }
    return result;
}

EncoderCircuit synthesize_encoder(const CssCode &code) {
    if (code.k_logical() != 1) {
        throw DomainError("encoder synthesis needs exactly one logical qubit, got " + std::to_string(code.k_logical()));
    }
    size_t n = code.n();
    RowEchelon x_checks = row_reduce(code.hx());
    BitVector logical = code.logical_x() ? *code.logical_x() : find_logical_x(code);
    for (size_t i = 0; i < x_checks.rank; ++i) {
        if (logical.get(x_checks.pivot_columns[i])) {
            logical ^= x_checks.reduced.row(i);
        }
    }
    std::vector<size_t> logical_support = support(logical);
    if (logical_support.empty()) {
        throw DomainError("logical X lies in the X-check span");
    }

    EncoderCircuit enc;
    enc.input_qubit = logical_support.front();
    enc.circuit = CliffordCircuit(n);
    std::vector<bool> is_pivot(n, false);
    for (size_t p : x_checks.pivot_columns) {
        is_pivot[p] = true;
        enc.plus_qubits.push_back(p);
        enc.circuit.prep_plus(p);
    }
    for (size_t q = 0; q < n; ++q) {
        if (!is_pivot[q] && q != enc.input_qubit) {
            enc.zero_qubits.push_back(q);
            enc.circuit.prep_zero(q);
        }
    }
    enc.preparation_ops = enc.circuit.ops().size();

    if (logical_support.size() > 1) {
        enc.circuit.cnot(enc.input_qubit, {logical_support.begin() + 1, logical_support.end()});
    }
    for (size_t i = 0; i < x_checks.rank; ++i) {
        size_t pivot = x_checks.pivot_columns[i];
        std::vector<size_t> targets;
        for (size_t q : support(x_checks.reduced.row(i))) {
            if (q != pivot) {
                targets.push_back(q);
            }
        }
        if (!targets.empty()) {
            enc.circuit.cnot(pivot, std::move(targets));
        }
    }
    return enc;
}

EncoderCheck verify_encoder(const CssCode &code, const EncoderCircuit &encoder) {
    size_t n = code.n();
    auto fail = [](std::string why) { return EncoderCheck{false, std::move(why)}; };
    if (encoder.circuit.qubit_count() != n) {
        return fail("encoder width differs from code length");
    }
    if (encoder.plus_qubits.size() + encoder.zero_qubits.size() + 1 != n) {
        return fail("wire roles do not cover every qubit");
    }
    CliffordCircuit unitary = encoder.circuit.slice(encoder.preparation_ops, encoder.circuit.ops().size());
    auto image = [&](size_t q, bool x) {
        PauliFrame start(n);
        (x ? start.x : start.z).set(q, true);
        return propagate_frame(unitary, start).output;
    };

    std::vector<BitVector> x_images;
    for (size_t q : encoder.plus_qubits) {
        PauliFrame f = image(q, true);
        if (f.z.any()) {
            return fail("X on |+> wire " + std::to_string(q) + " picks up a Z component");
        }
        x_images.push_back(f.x);
    }
    if (!spans_equal(x_images, code.hx())) {
        return fail("X images of |+> wires do not span the X checks");
    }
    std::vector<BitVector> z_images;
    for (size_t q : encoder.zero_qubits) {
        PauliFrame f = image(q, false);
        if (f.x.any()) {
            return fail("Z on |0> wire " + std::to_string(q) + " picks up an X component");
        }
        z_images.push_back(f.z);
    }
    if (!spans_equal(z_images, code.hz())) {
        return fail("Z images of |0> wires do not span the Z checks");
    }

    PauliFrame lx = image(encoder.input_qubit, true);
    PauliFrame lz = image(encoder.input_qubit, false);
    RowEchelon x_span = row_reduce(code.hx());
    RowEchelon z_span = row_reduce(code.hz());
    if (lx.z.any() || code.hz().apply(lx.x).any() || in_rowspan(x_span, lx.x)) {
        return fail("input X image is not a logical X");
    }
    if (lz.x.any() || code.hx().apply(lz.z).any() || in_rowspan(z_span, lz.z)) {
        return fail("input Z image is not a logical Z");
    }
    if (!lx.x.dot(lz.z)) {
        return fail("logical images commute");
    }
    if (code.logical_x() && !in_rowspan(x_span, lx.x ^ *code.logical_x())) {
        return fail("input X image differs from the code's logical X");
    }
    if (code.logical_z() && !in_rowspan(z_span, lz.z ^ *code.logical_z())) {
        return fail("input Z image differs from the code's logical Z");
    }
    return EncoderCheck{true, "ok"};
}

std::vector<Op> TeleportTemplate::corrections_for(bool outcome) const {
    if (!outcome) {
        return {};
    }
    Op op = correction;
    op.condition.reset();
    return {op};
}

TeleportTemplate build_zk_teleport(size_t k) {
    if (k < 2) {
        throw DomainError("Z_k teleportation needs k >= 2");
    }
    TeleportTemplate t;
    t.k = k;
    t.circuit = CliffordCircuit(2);
    t.circuit.prep_plus(t.magic_qubit);
    t.circuit.inject_zk(t.magic_qubit, k, false);
    t.circuit.cnot(t.data_qubit, {t.magic_qubit});
    t.circuit.measure_z(t.magic_qubit);
    t.measurement = t.circuit.last_measurement();
    if (k == 2) {
        t.circuit.s(t.data_qubit);
    } else {
        t.circuit.inject_zk(t.data_qubit, k - 1, true);
    }
    t.circuit.if_measured(t.measurement);
    t.correction = t.circuit.ops().back();
    return t;
}

ProtocolCircuit build_distillation_circuit(size_t k) {
    if (k < kMinDistillK || k > kMaxDistillK) {
        throw DomainError("distillation circuit needs k in [" + std::to_string(kMinDistillK) + ", " +
                          std::to_string(kMaxDistillK) + "]");
    }
    CssCode code = qrm(1, k + 2, true);
    EncoderCircuit enc = synthesize_encoder(code);
    size_t n = code.n();

    ProtocolCircuit p;
    p.k = k;
    p.output_qubit = n;
    p.circuit = CliffordCircuit(n + 1);
    const auto &enc_ops = enc.circuit.ops();
    p.circuit.prep_plus(p.output_qubit);
    for (size_t i = 0; i < enc.preparation_ops; ++i) {
        p.circuit.append(enc_ops[i]);
    }
    p.circuit.prep_zero(enc.input_qubit);
    p.circuit.cnot(p.output_qubit, {enc.input_qubit});
    for (size_t i = enc.preparation_ops; i < enc_ops.size(); ++i) {
        p.circuit.append(enc_ops[i]);
    }
    for (size_t q = 0; q < n; ++q) {
        p.circuit.inject_zk(q, k, true);
        p.error_sites.push_back(ErrorSite{p.circuit.ops().size() - 1, q});
    }
    for (size_t q = 0; q < n; ++q) {
        p.circuit.measure_x(q);
        p.observable.push_back(q);
    }
    for (const BitVector &row : code.hx().rows()) {
        p.detectors.push_back(support(row));
    }
    p.note = "the same circuit also distills Z_" + std::to_string(k) + "|+> states from Z_" + std::to_string(k) +
             "^dagger|+> inputs";
    return p;
}

PatternCounts count_patterns(const ProtocolCircuit &protocol, const std::vector<ErrorSite> &sites,
                             const EnumerationOptions &options) {
    size_t s = sites.size();
    if (protocol.detectors.size() > kMaxDetectors) {
        throw DomainError("too many detectors for enumeration");
    }
    bool long_run = s > options.exhaustive_limit;
    if (long_run && !options.allow_long_running) {
        throw DomainError(std::to_string(s) + " error sites exceed the exhaustive limit of " +
                          std::to_string(options.exhaustive_limit) + "; use the fast path or the long-running mode");
    }
    if (s > kLongRunSiteLimit) {
        throw DomainError("at most " + std::to_string(kLongRunSiteLimit) + " error sites can be enumerated");
    }
    uint64_t total = uint64_t{1} << s;
    std::vector<PatternCounts> partials;

    if (!long_run) {
        run_partitioned(total, options.parallel_degree, s, partials,
                        [&](uint64_t from, uint64_t to, PatternCounts &counts) {
                            for (uint64_t pattern = from; pattern < to; ++pattern) {
                                tally(pattern_signature(protocol, sites, pattern),
                                      static_cast<size_t>(std::popcount(pattern)), counts);
                            }
                        });
    } else {
        std::vector<uint64_t> single(s);
        for (size_t i = 0; i < s; ++i) {
            single[i] = pattern_signature(protocol, sites, uint64_t{1} << i);
        }
        run_partitioned(total, options.parallel_degree, s, partials,
                        [&](uint64_t from, uint64_t to, PatternCounts &counts) {
                            uint64_t gray = from ^ (from >> 1);
                            uint64_t sig = 0;
                            for (size_t i = 0; i < s; ++i) {
                                if ((gray >> i) & 1U) {
                                    sig ^= single[i];
                                }
                            }
                            for (uint64_t i = from; i < to; ++i) {
                                tally(sig, static_cast<size_t>(std::popcount(gray)), counts);
                                unsigned bit = static_cast<unsigned>(std::countr_zero(i + 1));
                                if (bit < s) {
                                    gray ^= uint64_t{1} << bit;
                                    sig ^= single[bit];
                                }
                            }
                        });
    }

    PatternCounts merged{std::vector<uint64_t>(s + 1, 0), std::vector<uint64_t>(s + 1, 0)};
    for (const auto &part : partials) {
        for (size_t w = 0; w <= s; ++w) {
            merged.accepted[w] += part.accepted[w];
            merged.accepted_bad[w] += part.accepted_bad[w];
        }
    }
    return merged;
}

ProtocolPolynomials polynomials_from_counts(const PatternCounts &counts, size_t sites) {
    IntPoly accepted;
    IntPoly bad;
    for (size_t w = 0; w <= sites; ++w) {
        IntPoly shape = IntPoly::monomial(1, w) * IntPoly::binomial_power(1, -1, sites - w);
        if (counts.accepted[w] != 0) {
            accepted += shape * mpz_class(std::to_string(counts.accepted[w]));
        }
        if (counts.accepted_bad[w] != 0) {
            bad += shape * mpz_class(std::to_string(counts.accepted_bad[w]));
        }
    }
    if (accepted.is_zero()) {
        throw DomainError("no error pattern is accepted");
    }
    ProtocolPolynomials out;
    out.acceptance = RationalFunction(accepted);
    out.output_error = RationalFunction(bad, accepted);
    out.n_inputs = sites;
    return out;
}

ProtocolPolynomials enumerate_protocol(const ProtocolCircuit &protocol, const std::vector<ErrorSite> &sites,
                                       const EnumerationOptions &options) {
    return polynomials_from_counts(count_patterns(protocol, sites, options), sites.size());
}

ProtocolPolynomials enumerate_protocol(const ProtocolCircuit &protocol, const EnumerationOptions &options) {
    return enumerate_protocol(protocol, protocol.error_sites, options);
}

ProtocolPolynomials macwilliams_polynomials(const CssCode &code) {
    size_t n = code.n();
    auto dual_sum = [](const BitMatrix &m) {
        WeightDistribution wd = weight_distribution(m);
        IntPoly sum;
        for (const auto &[weight, count] : wd.counts) {
            sum += IntPoly::binomial_power(1, -2, weight) * mpz_class(std::to_string(count));
        }
        IntPoly scale = IntPoly::monomial(mpz_class(1) << m.rank(), 0);
        return RationalFunction(sum, scale);
    };
    BitMatrix extended = code.hx();
    extended.append_row(BitVector::ones(n));
    RationalFunction acceptance = dual_sum(code.hx());
    RationalFunction harmless = dual_sum(extended);
    ProtocolPolynomials out;
    out.acceptance = acceptance;
    out.output_error = (acceptance - harmless) / acceptance;
    out.n_inputs = n;
    return out;
}

ProtocolPolynomials macwilliams_fastpath(size_t k) {
    if (k < kMinDistillK || k > kMaxDistillK) {
        throw DomainError("fast path needs k in [" + std::to_string(kMinDistillK) + ", " +
                          std::to_string(kMaxDistillK) + "]");
    }
    return macwilliams_polynomials(qrm(1, k + 2, true));
}

}  // namespace zkd
