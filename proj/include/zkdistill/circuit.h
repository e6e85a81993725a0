#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zkd {

enum class OpKind {
    prep_zero,
    prep_plus,
    cnot,  // qubits = {control, target, target, ...}
    h,
    s,
    s_dag,
    x,
    z,
    measure_x,
    measure_z,
    inject_zk,  // teleported Z_k from a Z_k|+> resource state
};

struct Op {
    OpKind kind = OpKind::h;
    std::vector<size_t> qubits;
    size_t k = 0;                      // inject_zk only
    bool adaptive_correction = true;   // inject_zk only
    std::optional<size_t> condition;   // applied iff this measurement reads 1

    bool operator==(const Op &other) const = default;
};

/// Gate-list IR over the stabilizer generating set plus Z_k injection.
/// Measurements are numbered in program order.
class CliffordCircuit {
   public:
    CliffordCircuit() = default;
    explicit CliffordCircuit(size_t qubit_count) : qubit_count_(qubit_count) {}

    size_t qubit_count() const { return qubit_count_; }
    const std::vector<Op> &ops() const { return ops_; }
    size_t measurement_count() const;

    CliffordCircuit &prep_zero(size_t q);
    CliffordCircuit &prep_plus(size_t q);
    CliffordCircuit &cnot(size_t control, std::vector<size_t> targets);
    CliffordCircuit &h(size_t q);
    CliffordCircuit &s(size_t q);
    CliffordCircuit &s_dag(size_t q);
    CliffordCircuit &x(size_t q);
    CliffordCircuit &z(size_t q);
    /// Returns the measurement index through `last_measurement()`.
    CliffordCircuit &measure_x(size_t q);
    CliffordCircuit &measure_z(size_t q);
    CliffordCircuit &inject_zk(size_t q, size_t k, bool adaptive_correction = true);
    CliffordCircuit &append(Op op);
    /// Puts a classical condition on the most recently added op.
    CliffordCircuit &if_measured(size_t measurement);

    size_t last_measurement() const;

    /// Ops [from, to) over the same qubits.
    CliffordCircuit slice(size_t from, size_t to) const;

    /// Throws DomainError for out-of-range qubits, repeated CNOT qubits, ops
    /// on an already measured qubit that was not re-prepared, or conditions
    /// on measurements that have not happened yet.
    void validate() const;

    bool operator==(const CliffordCircuit &other) const = default;

   private:
    size_t qubit_count_ = 0;
    std::vector<Op> ops_;
};

/// Plain gate list: a `QUBITS n` header, then one `OP q[,q...]` line per op,
/// with an optional ` if m<index>` suffix. Round-trips exactly.
std::string to_gate_list(const CliffordCircuit &circuit);
CliffordCircuit parse_gate_list(std::string_view text);

/// OpenQASM 2.0 flavored text. Z_k injections and conditioned ops that
/// QASM 2 cannot express are emitted as comments.
std::string to_qasm(const CliffordCircuit &circuit);

std::string op_mnemonic(const Op &op);

}  // namespace zkd
