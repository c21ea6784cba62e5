#!/usr/bin/env python3
"""Writes the desk-scale benchmark corpus into corpus/.

Every circuit is deterministic; random ones use fixed seeds.
"""
import math
import os
import random
import sys

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def write(path, comment, n, body, cregs=None):
    with open(path, "w") as f:
        f.write(f"// {comment}\n")
        f.write(HEADER)
        f.write(f"qreg q[{n}];\n")
        if cregs:
            f.write(f"creg c[{cregs}];\n")
        f.write("".join(line + "\n" for line in body))


def ghz(n):
    return ["h q[0];"] + [f"cx q[{i}],q[{i + 1}];" for i in range(n - 1)]


def qft(n):
    body = []
    for i in range(n):
        body.append(f"h q[{i}];")
        for j in range(i + 1, n):
            body.append(f"cu1(pi/{2 ** (j - i)}) q[{j}],q[{i}];")
    for i in range(n // 2):
        body.append(f"swap q[{i}],q[{n - 1 - i}];")
    return body


def bernstein_vazirani(n, secret):
    anc = n - 1
    body = [f"x q[{anc}];"] + [f"h q[{i}];" for i in range(n)]
    body += [f"cx q[{i}],q[{anc}];" for i in range(n - 1) if (secret >> i) & 1]
    body += [f"h q[{i}];" for i in range(n - 1)]
    return body


def cdkm_adder(bits):
    # q[0] carry-in, a_i = q[1+2i], b_i = q[2+2i], q[2*bits+1] carry-out
    a = [1 + 2 * i for i in range(bits)]
    b = [2 + 2 * i for i in range(bits)]
    cin, cout = 0, 2 * bits + 1

    def maj(x, y, z):
        return [f"cx q[{z}],q[{y}];", f"cx q[{z}],q[{x}];", f"ccx q[{x}],q[{y}],q[{z}];"]

    def uma(x, y, z):
        return [f"ccx q[{x}],q[{y}],q[{z}];", f"cx q[{z}],q[{x}];", f"cx q[{x}],q[{y}];"]

    body = [f"x q[{a[0]}];", f"x q[{b[bits - 1]}];"]
    body += maj(cin, b[0], a[0])
    for i in range(1, bits):
        body += maj(a[i - 1], b[i], a[i])
    body.append(f"cx q[{a[bits - 1]}],q[{cout}];")
    for i in range(bits - 1, 0, -1):
        body += uma(a[i - 1], b[i], a[i])
    body += uma(cin, b[0], a[0])
    return body


def toffoli_chain(n):
    return [f"ccx q[{i}],q[{i + 1}],q[{i + 2}];" for i in range(n - 2)]


def grover3():
    body = [f"h q[{i}];" for i in range(3)]
    for _ in range(2):
        # oracle marks |111> via CCZ
        body += ["h q[2];", "ccx q[0],q[1],q[2];", "h q[2];"]
        body += [f"h q[{i}];" for i in range(3)] + [f"x q[{i}];" for i in range(3)]
        body += ["h q[2];", "ccx q[0],q[1],q[2];", "h q[2];"]
        body += [f"x q[{i}];" for i in range(3)] + [f"h q[{i}];" for i in range(3)]
    return body


def ising(n, steps):
    body = [f"h q[{i}];" for i in range(n)]
    for s in range(steps):
        for parity in (0, 1):
            for i in range(parity, n - 1, 2):
                body += [f"cx q[{i}],q[{i + 1}];", f"rz({0.3 + 0.1 * s}) q[{i + 1}];", f"cx q[{i}],q[{i + 1}];"]
        body += [f"rx({0.7}) q[{i}];" for i in range(n)]
    return body


def random_circuit(n, gates, seed, cx_share=0.5):
    rng = random.Random(seed)
    singles = ["h", "t", "tdg", "s", "x"]
    body = []
    for _ in range(gates):
        if rng.random() < cx_share:
            c, t = rng.sample(range(n), 2)
            body.append(f"cx q[{c}],q[{t}];")
        else:
            body.append(f"{rng.choice(singles)} q[{rng.randrange(n)}];")
    return body


def parity_check(n):
    anc = n - 1
    return [f"h q[{i}];" for i in range(n - 1)] + [f"cx q[{i}],q[{anc}];" for i in range(n - 1)]


def cycle_shift(n):
    body = [f"x q[0];", "h q[1];"]
    for i in range(n - 1):
        body.append(f"swap q[{i}],q[{i + 1}];")
    return body


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "corpus")
    os.makedirs(out, exist_ok=True)
    p = lambda name: os.path.join(out, name + ".qasm")

    with open(p("toy_3"), "w") as f:
        f.write("// Three qubits, five gates.\n" + HEADER + "qreg q[3];\n"
                "h q[0];\ncx q[0],q[1];\nt q[2];\ncx q[1],q[2];\ncx q[0],q[2];\n")
    with open(p("five_cnot_6"), "w") as f:
        f.write("// Five CNOTs over six qubits, three layers.\n" + HEADER + "qreg q[6];\n"
                "cx q[2],q[3];\ncx q[1],q[0];\ncx q[1],q[4];\ncx q[5],q[3];\ncx q[2],q[3];\n")

    write(p("ghz_8"), "GHZ state preparation", 8, ghz(8))
    write(p("ghz_14"), "GHZ state preparation", 14, ghz(14))
    write(p("qft_5"), "Quantum Fourier transform", 5, qft(5))
    write(p("qft_7"), "Quantum Fourier transform", 7, qft(7))
    write(p("bv_10"), "Bernstein-Vazirani, secret 0b101101101", 10, bernstein_vazirani(10, 0b101101101))
    write(p("cdkm_adder_3"), "Ripple-carry adder, 3-bit operands", 8, cdkm_adder(3))
    write(p("cdkm_adder_4"), "Ripple-carry adder, 4-bit operands", 10, cdkm_adder(4))
    write(p("toffoli_chain_6"), "Chain of overlapping Toffoli gates", 6, toffoli_chain(6))
    write(p("grover_3"), "Two Grover iterations over three qubits", 3, grover3())
    write(p("ising_8"), "Trotterised transverse-field Ising chain", 8, ising(8, 2))
    write(p("parity_12"), "Parity of eleven qubits into an ancilla", 12, parity_check(12))
    write(p("cycle_shift_9"), "Cyclic shift through a SWAP ladder", 9, cycle_shift(9))
    write(p("random_5_40"), "Random Clifford+T, seed 11", 5, random_circuit(5, 40, 11))
    write(p("random_8_60"), "Random Clifford+T, seed 23", 8, random_circuit(8, 60, 23))
    write(p("random_11_60"), "Random Clifford+T, seed 37", 11, random_circuit(11, 60, 37))
    write(p("random_14_50"), "Random Clifford+T, seed 41", 14, random_circuit(14, 50, 41, cx_share=0.4))


if __name__ == "__main__":
    main()
