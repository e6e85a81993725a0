#include "zkdistill/circuit.h"

#include <gtest/gtest.h>

#include "zkdistill/gf2.h"
#include "zkdistill/protosim.h"

namespace zkd {
namespace {

CliffordCircuit sample() {
    CliffordCircuit c(4);
    c.prep_plus(0).prep_zero(1).cnot(0, {1, 2}).h(3).s(2).s_dag(1).x(0).z(3);
    c.inject_zk(2, 3, false).measure_x(0).measure_z(1);
    c.z(2).if_measured(1);
    c.inject_zk(3, 2).if_measured(0);
    return c;
}

TEST(Circuit, MeasurementCount) {
    CliffordCircuit c = sample();
    EXPECT_EQ(c.measurement_count(), 2u);
    EXPECT_EQ(c.last_measurement(), 1u);
    EXPECT_NO_THROW(c.validate());
}

TEST(Circuit, GateListRoundTrip) {
    CliffordCircuit c = sample();
    std::string text = to_gate_list(c);
    EXPECT_EQ(parse_gate_list(text), c);
    EXPECT_EQ(to_gate_list(parse_gate_list(text)), text);
    EXPECT_NE(text.find("CNOT 0,1,2\n"), std::string::npos);
    EXPECT_NE(text.find("INJECT_Z3_RAW 2\n"), std::string::npos);
    EXPECT_NE(text.find("Z 2 if m1\n"), std::string::npos);
}

TEST(Circuit, ProtocolCircuitsRoundTrip) {
    for (size_t k = 2; k <= 4; ++k) {
        CliffordCircuit c = build_distillation_circuit(k).circuit;
        EXPECT_EQ(parse_gate_list(to_gate_list(c)), c);
        CliffordCircuit t = build_zk_teleport(k).circuit;
        EXPECT_EQ(parse_gate_list(to_gate_list(t)), t);
    }
}

TEST(Circuit, ParseErrors) {
    EXPECT_THROW(parse_gate_list("H 0\n"), DomainError);
    EXPECT_THROW(parse_gate_list("QUBITS 2\nFOO 0\n"), DomainError);
    EXPECT_THROW(parse_gate_list("QUBITS 2\nH 5\n"), DomainError);
    EXPECT_THROW(parse_gate_list("QUBITS 2\nH 0 when m0\n"), DomainError);
    EXPECT_THROW(parse_gate_list("QUBITS 2\nM_Z 0\nH 0\n"), DomainError);
    EXPECT_NO_THROW(parse_gate_list("QUBITS 2\n# comment\n\nM_Z 0\nPREP_Z 0\nH 0\n"));
}

TEST(Circuit, ValidationRules) {
    CliffordCircuit bad_cnot(3);
    bad_cnot.cnot(0, {0});
    EXPECT_THROW(bad_cnot.validate(), DomainError);

    CliffordCircuit no_target(3);
    no_target.cnot(0, {});
    EXPECT_THROW(no_target.validate(), DomainError);

    CliffordCircuit future(2);
    future.x(0).if_measured(0);
    EXPECT_THROW(future.validate(), DomainError);

    CliffordCircuit after_measure(1);
    after_measure.measure_x(0).h(0);
    EXPECT_THROW(after_measure.validate(), DomainError);

    CliffordCircuit reprep(1);
    reprep.measure_x(0).prep_plus(0).h(0);
    EXPECT_NO_THROW(reprep.validate());

    CliffordCircuit c(2);
    EXPECT_THROW(c.h(2), DomainError);
    EXPECT_THROW(c.if_measured(0), DomainError);
    EXPECT_THROW(c.last_measurement(), DomainError);
}

TEST(Circuit, Qasm) {
    std::string q = to_qasm(sample());
    EXPECT_EQ(q.rfind("OPENQASM 2.0;\n", 0), 0u);
    EXPECT_NE(q.find("qreg q[4];"), std::string::npos);
    EXPECT_NE(q.find("creg m[2];"), std::string::npos);
    EXPECT_NE(q.find("cx q[0],q[1]; cx q[0],q[2];"), std::string::npos);
    EXPECT_NE(q.find("sdg q[1];"), std::string::npos);
    EXPECT_NE(q.find("h q[0]; measure q[0] -> m[0];"), std::string::npos);
    EXPECT_NE(q.find("// zk_teleport k=3 adaptive=0 q[2]"), std::string::npos);
    EXPECT_NE(q.find("// if (m[1] == 1) z q[2];"), std::string::npos);
}

TEST(Circuit, Slice) {
    CliffordCircuit c = sample();
    CliffordCircuit s = c.slice(2, 4);
    EXPECT_EQ(s.ops().size(), 2u);
    EXPECT_EQ(s.ops()[0].kind, OpKind::cnot);
    EXPECT_THROW(c.slice(3, 2), std::out_of_range);
}

}  // namespace
}  // namespace zkd
