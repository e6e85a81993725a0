#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "zkdistill/circuit.h"
#include "zkdistill/codes.h"
#include "zkdistill/gf2.h"
#include "zkdistill/polynomial.h"

namespace zkd {

inline constexpr size_t kExhaustiveSiteLimit = 25;
inline constexpr size_t kLongRunSiteLimit = 31;

struct PauliFrame {
    BitVector x;
    BitVector z;

    explicit PauliFrame(size_t qubits = 0) : x(qubits), z(qubits) {}
    bool trivial() const { return x.none() && z.none(); }
    bool operator==(const PauliFrame &other) const = default;
};

/// A Pauli error inserted right after op `after_op` (or before every op when
/// `after_op` is npos).
struct PauliInsertion {
    static constexpr size_t kBeforeAll = static_cast<size_t>(-1);
    size_t after_op = kBeforeAll;
    size_t qubit = 0;
    bool x = false;
    bool z = true;
};

struct FrameResult {
    BitVector measurement_flips;
    PauliFrame output;
};

/// Propagates a Pauli frame through the circuit. Preparations reset a
/// qubit's frame, measurements record a flip when the frame anticommutes
/// with the measured basis. An X component reaching inject_zk throws, as the
/// injected gate is not Clifford for k >= 2. Conditioned Paulis toggle the
/// frame when their controlling outcome flipped; other conditioned ops throw
/// if they would see a flipped control or a nontrivial frame.
FrameResult propagate_frame(const CliffordCircuit &circuit, const PauliFrame &initial);
FrameResult propagate_frame(const CliffordCircuit &circuit, const PauliFrame &initial,
                            const std::vector<PauliInsertion> &insertions);

struct EncoderCircuit {
    CliffordCircuit circuit;
    size_t input_qubit = 0;
    /// Number of leading preparation ops; the unitary part follows.
    size_t preparation_ops = 0;
    std::vector<size_t> plus_qubits;
    std::vector<size_t> zero_qubits;
};

/// Standard-form encoder: |+> on the pivots of the reduced X checks, |0>
/// elsewhere, the input qubit fanned out along a reduced logical X, then each
/// pivot fanned out along its check. Throws DomainError unless k_logical = 1.
EncoderCircuit synthesize_encoder(const CssCode &code);

struct EncoderCheck {
    bool passed = false;
    std::string detail;
};

/// Symplectic check by frame propagation through the unitary part: X on
/// the |+> wires must generate exactly the X checks, Z on the |0> wires
/// exactly the Z checks, and X / Z on the input wire must be logical
/// operators (equal to the code's logicals modulo stabilizers when set).
EncoderCheck verify_encoder(const CssCode &code, const EncoderCircuit &encoder);

struct TeleportTemplate {
    CliffordCircuit circuit;
    size_t data_qubit = 0;
    size_t magic_qubit = 1;
    size_t measurement = 0;
    size_t k = 0;
    Op correction;
    /// Ops applied for a given outcome of the M_Z measurement.
    std::vector<Op> corrections_for(bool outcome) const;
};

/// Z_k gate teleportation: Z_k|+> on the magic wire, CNOT data -> magic,
/// M_Z on the magic wire, then Z_(k-1) on the data wire iff the outcome is 1
/// (S for k = 2).
TeleportTemplate build_zk_teleport(size_t k);

struct ErrorSite {
    size_t after_op;
    size_t qubit;
};

struct ProtocolCircuit {
    CliffordCircuit circuit;
    size_t k = 0;
    size_t output_qubit = 0;
    /// Each detector is a set of measurement indices whose parity is 0 in
    /// the error-free run. Acceptance requires every detector to stay even.
    std::vector<std::vector<size_t>> detectors;
    /// Measurement parity that sets the Z correction on the output.
    std::vector<size_t> observable;
    /// One Z-error site per faulty Z_k|+> input.
    std::vector<ErrorSite> error_sites;
    std::string note;
};

/// Encoder for the shortened QRM(1, k+2) code applied to half of a Bell
/// pair, transversal Z_k injections on all code qubits, then M_X on every
/// code qubit. The output wire holds Z_k^dagger|+> on acceptance. Throws
/// DomainError for k outside [2, 12].
ProtocolCircuit build_distillation_circuit(size_t k);

struct ProtocolPolynomials {
    RationalFunction acceptance;
    RationalFunction output_error;  // conditioned on acceptance
    size_t n_inputs = 0;
};

struct EnumerationOptions {
    size_t exhaustive_limit = kExhaustiveSiteLimit;
    size_t parallel_degree = 1;
    /// Allows up to kLongRunSiteLimit sites using Gray-code enumeration over
    /// per-site flip signatures.
    bool allow_long_running = false;
};

/// Per-weight counts of error patterns, indexed by Hamming weight.
struct PatternCounts {
    std::vector<uint64_t> accepted;
    std::vector<uint64_t> accepted_bad;
};

/// Exact enumeration of every Z-error pattern on the given sites. Below the
/// exhaustive limit each pattern is propagated through the circuit; above it
/// (with allow_long_running) patterns are combined from single-site
/// signatures, which is valid because frame propagation is linear.
PatternCounts count_patterns(const ProtocolCircuit &protocol, const std::vector<ErrorSite> &sites,
                             const EnumerationOptions &options = {});

ProtocolPolynomials polynomials_from_counts(const PatternCounts &counts, size_t sites);

ProtocolPolynomials enumerate_protocol(const ProtocolCircuit &protocol, const std::vector<ErrorSite> &sites,
                                       const EnumerationOptions &options = {});
ProtocolPolynomials enumerate_protocol(const ProtocolCircuit &protocol, const EnumerationOptions &options = {});

/// Dual-sum evaluation over rowspan(H^X) and rowspan(H^X) + all-ones.
ProtocolPolynomials macwilliams_polynomials(const CssCode &code);
ProtocolPolynomials macwilliams_fastpath(size_t k);

}  // namespace zkd
