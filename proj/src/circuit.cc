#include "zkdistill/circuit.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "zkdistill/gf2.h"

namespace zkd {

namespace {

Op single(OpKind kind, size_t q) {
    Op op;
    op.kind = kind;
    op.qubits = {q};
    return op;
}

bool is_measurement(OpKind kind) { return kind == OpKind::measure_x || kind == OpKind::measure_z; }

bool is_preparation(OpKind kind) { return kind == OpKind::prep_zero || kind == OpKind::prep_plus; }

size_t parse_index(std::string_view text, std::string_view what) {
    size_t value = 0;
    auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size() || text.empty()) {
        throw DomainError("gate list: bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t end = text.find(sep, start);
        out.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) {
            return out;
        }
        start = end + 1;
    }
}

struct Mnemonic {
    OpKind kind;
    std::string_view name;
};

constexpr Mnemonic kMnemonics[] = {
    {OpKind::prep_zero, "PREP_Z"}, {OpKind::prep_plus, "PREP_X"}, {OpKind::cnot, "CNOT"},
    {OpKind::h, "H"},              {OpKind::s, "S"},              {OpKind::s_dag, "S_DAG"},
    {OpKind::x, "X"},              {OpKind::z, "Z"},              {OpKind::measure_x, "M_X"},
    {OpKind::measure_z, "M_Z"},
};

}  // namespace

size_t CliffordCircuit::measurement_count() const {
    return static_cast<size_t>(
        std::count_if(ops_.begin(), ops_.end(), [](const Op &op) { return is_measurement(op.kind); }));
}

CliffordCircuit &CliffordCircuit::prep_zero(size_t q) { return append(single(OpKind::prep_zero, q)); }
CliffordCircuit &CliffordCircuit::prep_plus(size_t q) { return append(single(OpKind::prep_plus, q)); }
CliffordCircuit &CliffordCircuit::h(size_t q) { return append(single(OpKind::h, q)); }
CliffordCircuit &CliffordCircuit::s(size_t q) { return append(single(OpKind::s, q)); }
CliffordCircuit &CliffordCircuit::s_dag(size_t q) { return append(single(OpKind::s_dag, q)); }
CliffordCircuit &CliffordCircuit::x(size_t q) { return append(single(OpKind::x, q)); }
CliffordCircuit &CliffordCircuit::z(size_t q) { return append(single(OpKind::z, q)); }
CliffordCircuit &CliffordCircuit::measure_x(size_t q) { return append(single(OpKind::measure_x, q)); }
CliffordCircuit &CliffordCircuit::measure_z(size_t q) { return append(single(OpKind::measure_z, q)); }

CliffordCircuit &CliffordCircuit::cnot(size_t control, std::vector<size_t> targets) {
    Op op;
    op.kind = OpKind::cnot;
    op.qubits.push_back(control);
    op.qubits.insert(op.qubits.end(), targets.begin(), targets.end());
    return append(std::move(op));
}

CliffordCircuit &CliffordCircuit::inject_zk(size_t q, size_t k, bool adaptive_correction) {
    Op op = single(OpKind::inject_zk, q);
    op.k = k;
    op.adaptive_correction = adaptive_correction;
    return append(std::move(op));
}

CliffordCircuit &CliffordCircuit::append(Op op) {
    for (size_t q : op.qubits) {
        if (q >= qubit_count_) {
            throw DomainError("qubit " + std::to_string(q) + " out of range for a " + std::to_string(qubit_count_) +
                              "-qubit circuit");
        }
    }
    ops_.push_back(std::move(op));
    return *this;
}

CliffordCircuit &CliffordCircuit::if_measured(size_t measurement) {
    if (ops_.empty()) {
        throw DomainError("no op to condition");
    }
    ops_.back().condition = measurement;
    return *this;
}

size_t CliffordCircuit::last_measurement() const {
    size_t count = measurement_count();
    if (count == 0) {
        throw DomainError("circuit has no measurements");
    }
    return count - 1;
}

CliffordCircuit CliffordCircuit::slice(size_t from, size_t to) const {
    if (from > to || to > ops_.size()) {
        throw std::out_of_range("bad circuit slice");
    }
    CliffordCircuit out(qubit_count_);
    out.ops_.assign(ops_.begin() + static_cast<std::ptrdiff_t>(from), ops_.begin() + static_cast<std::ptrdiff_t>(to));
    return out;
}

void CliffordCircuit::validate() const {
    std::vector<bool> measured(qubit_count_, false);
    size_t measurements = 0;
    for (size_t i = 0; i < ops_.size(); ++i) {
        const Op &op = ops_[i];
        std::string where = "op " + std::to_string(i) + " (" + op_mnemonic(op) + ")";
        if (op.qubits.empty()) {
            throw DomainError(where + " has no qubits");
        }
        if (op.kind != OpKind::cnot && op.qubits.size() != 1) {
            throw DomainError(where + " takes exactly one qubit");
        }
        if (op.kind == OpKind::cnot) {
            if (op.qubits.size() < 2) {
                throw DomainError(where + " needs a control and at least one target");
            }
            std::set<size_t> distinct(op.qubits.begin(), op.qubits.end());
            if (distinct.size() != op.qubits.size()) {
                throw DomainError(where + " repeats a qubit");
            }
        }
        for (size_t q : op.qubits) {
            if (q >= qubit_count_) {
                throw DomainError(where + " uses out-of-range qubit " + std::to_string(q));
            }
        }
        if (op.condition && *op.condition >= measurements) {
            throw DomainError(where + " is conditioned on a future measurement");
        }
        if (is_preparation(op.kind)) {
            measured[op.qubits[0]] = false;
            continue;
        }
        for (size_t q : op.qubits) {
            if (measured[q]) {
                throw DomainError(where + " acts on measured qubit " + std::to_string(q));
            }
        }
        if (is_measurement(op.kind)) {
            measured[op.qubits[0]] = true;
            ++measurements;
        }
    }
}

std::string op_mnemonic(const Op &op) {
    if (op.kind == OpKind::inject_zk) {
        return "INJECT_Z" + std::to_string(op.k) + (op.adaptive_correction ? "" : "_RAW");
    }
    for (const auto &m : kMnemonics) {
        if (m.kind == op.kind) {
            return std::string(m.name);
        }
    }
    return "?";
}

std::string to_gate_list(const CliffordCircuit &circuit) {
    std::ostringstream out;
    out << "QUBITS " << circuit.qubit_count() << '\n';
    for (const Op &op : circuit.ops()) {
        out << op_mnemonic(op) << ' ';
        for (size_t i = 0; i < op.qubits.size(); ++i) {
            out << (i ? "," : "") << op.qubits[i];
        }
        if (op.condition) {
            out << " if m" << *op.condition;
        }
        out << '\n';
    }
    return out.str();
}

CliffordCircuit parse_gate_list(std::string_view text) {
    std::vector<std::string_view> lines = split(text, '\n');
    size_t line_no = 0;
    auto next_line = [&]() -> std::optional<std::string_view> {
        while (line_no < lines.size()) {
            std::string_view line = lines[line_no++];
            if (!line.empty() && line.back() == '\r') {
                line.remove_suffix(1);
            }
            if (!line.empty() && line.front() != '#') {
                return line;
            }
        }
        return std::nullopt;
    };

    auto header = next_line();
    if (!header || header->substr(0, 7) != "QUBITS ") {
        throw DomainError("gate list must start with 'QUBITS <n>'");
    }
    CliffordCircuit circuit(parse_index(header->substr(7), "qubit count"));

    while (auto line = next_line()) {
        std::vector<std::string_view> fields = split(*line, ' ');
        if (fields.size() != 2 && fields.size() != 4) {
            throw DomainError("gate list line " + std::to_string(line_no) + ": expected 'OP q[,q...] [if m<i>]'");
        }
        Op op;
        std::string_view name = fields[0];
        bool known = false;
        for (const auto &m : kMnemonics) {
            if (m.name == name) {
                op.kind = m.kind;
                known = true;
            }
        }
        if (!known && name.substr(0, 8) == "INJECT_Z") {
            std::string_view rest = name.substr(8);
            op.kind = OpKind::inject_zk;
            if (rest.size() > 4 && rest.substr(rest.size() - 4) == "_RAW") {
                op.adaptive_correction = false;
                rest.remove_suffix(4);
            }
            op.k = parse_index(rest, "Z_k order");
            known = true;
        }
        if (!known) {
            throw DomainError("gate list line " + std::to_string(line_no) + ": unknown op '" + std::string(name) + "'");
        }
        for (std::string_view q : split(fields[1], ',')) {
            op.qubits.push_back(parse_index(q, "qubit"));
        }
        if (fields.size() == 4) {
            if (fields[2] != "if" || fields[3].size() < 2 || fields[3][0] != 'm') {
                throw DomainError("gate list line " + std::to_string(line_no) + ": expected 'if m<index>'");
            }
            op.condition = parse_index(fields[3].substr(1), "measurement index");
        }
        circuit.append(std::move(op));
    }
    circuit.validate();
    return circuit;
}

std::string to_qasm(const CliffordCircuit &circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.qubit_count() << "];\n";
    size_t measurements = circuit.measurement_count();
    if (measurements > 0) {
        out << "creg m[" << measurements << "];\n";
    }
    size_t next_measurement = 0;
    for (const Op &op : circuit.ops()) {
        std::ostringstream line;
        auto q = [&](size_t i) { return "q[" + std::to_string(op.qubits[i]) + "]"; };
        switch (op.kind) {
            case OpKind::prep_zero:
                line << "reset " << q(0) << ";";
                break;
            case OpKind::prep_plus:
                line << "reset " << q(0) << "; h " << q(0) << ";";
                break;
            case OpKind::cnot:
                for (size_t i = 1; i < op.qubits.size(); ++i) {
                    line << (i > 1 ? " " : "") << "cx " << q(0) << "," << q(i) << ";";
                }
                break;
            case OpKind::h:
                line << "h " << q(0) << ";";
                break;
            case OpKind::s:
                line << "s " << q(0) << ";";
                break;
            case OpKind::s_dag:
                line << "sdg " << q(0) << ";";
                break;
            case OpKind::x:
                line << "x " << q(0) << ";";
                break;
            case OpKind::z:
                line << "z " << q(0) << ";";
                break;
            case OpKind::measure_x:
                line << "h " << q(0) << "; measure " << q(0) << " -> m[" << next_measurement++ << "];";
                break;
            case OpKind::measure_z:
                line << "measure " << q(0) << " -> m[" << next_measurement++ << "];";
                break;
            case OpKind::inject_zk:
                line << "// zk_teleport k=" << op.k << " adaptive=" << (op.adaptive_correction ? 1 : 0) << " "
                     << q(0);
                break;
        }
        if (op.condition) {
            out << "// if (m[" << *op.condition << "] == 1) " << line.str() << "\n";
        } else {
            out << line.str() << "\n";
        }
    }
    return out.str();
}

}  // namespace zkd
