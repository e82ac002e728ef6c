// Copyright 2026 The paqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// The benchmark corpus as embedded AXL sources. Each source ends with one
// codegen directive carrying the default parameter binding; the harness
// replaces the transform and, for scaling runs, the value of N.
//
// Register layouts follow the published circuit diagrams:
//   adder_mau  q0 = carry-in, b_i = 2i+1, a_i = 2i+2, z = 2N+1
//   cuccaro    q0 = carry-in, a_i = 2i+1, b_i = 2i+2, z = 2N+1
//   sum, init  a_i = 2i, b_i = 2i+1, z = 2N
//   cnt        three lanes per digit, 3i .. 3i+3

#include <string>
#include <vector>

#include "paqc/affine.hpp"

namespace paqc {

struct Benchmark {
  std::string name;
  std::string source;
  ParamBinding defaults;
  std::size_t statements = 0;  // statement definitions in the source
  std::size_t qubits = 0;      // register size under the defaults
  std::size_t ops = 0;         // gate instances under the defaults
};

namespace sources {

inline constexpr const char* kParity = R"(// parity: toggle every data qubit and fold it into qubit 0
param M;
statement S1, S2, S3;
S1 := {t:1<=t<=M ( #X(t) (+) #CNOT(t,0) ) };
S2 := {t:1<=t<=M ( #X(t) ) };
S3 := {t:1<=t<=M ( #CNOT(t,0) ) };
codegen {S1} with {M=8} apply {plutomax};
codegen {S2(+)S3} with {M=8} apply {plutomin};
)";

inline constexpr const char* kCheung = R"(// cheung: triangular array of independent Toffoli gates
param N;
statement S1;
S1 := {i,j : 0<=i<N, 0<=j<N, i+j<N ( #Toffoli(i, N+j, 2*N+i+j) ) };
codegen {S1} with {N=6};
)";

inline constexpr const char* kPipelined = R"(// pipelined-swap: swap two qubits 2N lanes apart through a CNOT ladder
param N;
statement S1a, S1b, S1c;
statement S2a, S2b, S2c;
statement S3;
statement S4a, S4b, S4c;
statement S5a, S5b, S5c;

S1a := {i: 0<=i<N ( #CNOT(i, i+1) ) };
S1b := {i: 0<=i<N ( #CNOT(i+1, i) ) };
S1c := {i: 0<=i<N ( #CNOT(i, i+1) ) };

S2a := {i: 0<=i<N ( #CNOT(2*N+1-i, 2*N-i) ) };
S2b := {i: 0<=i<N ( #CNOT(2*N-i, 2*N+1-i) ) };
S2c := {i: 0<=i<N ( #CNOT(2*N+1-i, 2*N-i) ) };

S3 := {i: i = N (
  #CNOT(i, i+1) (+) #CNOT(i+1, i) (+) #CNOT(i, i+1) };

S4a := {i: 0<=i<N ( #CNOT(N-1-i, N-i) ) };
S4b := {i: 0<=i<N ( #CNOT(N-i, N-1-i) ) };
S4c := {i: 0<=i<N ( #CNOT(N-1-i, N-i) ) };

S5a := {i: 0<i<=N ( #CNOT(N+i, N+i+1) ) };
S5b := {i: 0<i<=N ( #CNOT(N+i+1, N+i) ) };
S5c := {i: 0<i<=N ( #CNOT(N+i, N+i+1) ) };

codegen { S1a (+) S1b (+) S1c (+) S2a (+)
  S2b (+) S2c (+) S3 (+) S4a (+) S4b (+)
  S4c (+) S5a (+) S5b (+) S5c } with { N=6 };
)";

inline constexpr const char* kAdderMau = R"(// adder_mau: ripple-carry adder built from MAJ and UMA blocks
param N;
statement S1, S2, S3;
// MAJ(c_i, b_i, a_i), left to right
S1 := {i: 0<=i<N (
  #CNOT(2*i+2, 2*i+1) (+) #CNOT(2*i+2, 2*i) (+) #Toffoli(2*i, 2*i+1, 2*i+2) ) };
// carry out
S2 := {i: i = N ( #CNOT(2*i, 2*i+1) ) };
// UMA(c_i, b_i, a_i), right to left
S3 := {i: 0<=i<N (
  #Toffoli(2*N-2-2*i, 2*N-1-2*i, 2*N-2*i) (+) #CNOT(2*N-2*i, 2*N-2-2*i)
  (+) #CNOT(2*N-2-2*i, 2*N-1-2*i) ) };
codegen {S1 (+) S2 (+) S3} with {N=9};
)";

inline constexpr const char* kCuccaro = R"(// cuccaro: ripple-carry adder without the ancilla-heavy MAJ chain
param N;
statement S1, S2, S3, S4, S5, S6;
S1 := {i: 1<=i<N ( #CNOT(2*i+1, 2*i+2) ) };
S2 := {i: 1<=i<N ( #CNOT(2*N-2*i+1, 2*N-2*i+3) ) };
S3 := {i: 0<=i<N ( #Toffoli(2*i+1, 2*i+2, 2*i+3) ) };
S4 := {i: 1<=i<N (
  #CNOT(2*N-2*i+1, 2*N-2*i+2) (+) #Toffoli(2*N-2*i-1, 2*N-2*i, 2*N-2*i+1) ) };
S5 := {i: 1<=i<N-1 ( #X(2*i+2) (+) #CNOT(2*i+1, 2*i+2) (+) #X(2*i+2) ) };
S6 := {i: 1<=i<N-1 ( #CNOT(2*i+1, 2*i+3) (+) #CNOT(2*i+1, 2*i+2) ) };
codegen {S1 (+) S2 (+) S3 (+) S4 (+) S5 (+) S6} with {N=6};
)";

inline constexpr const char* kSum = R"(// sum: in-place adder without ancilla
param N;
statement S1, S2, S3, S4, S5, S6, S7;
S1 := {i: 0<=i<N ( #CNOT(2*i, 2*i+1) ) };
S2 := {i: 1<=i<N ( #CNOT(2*N-2*i, 2*N-2*i+2) ) };
S3 := {i: 0<=i<N-1 ( #Toffoli(2*i+1, 2*i, 2*i+2) ) };
S4 := {i: i = N ( #Toffoli(2*i-1, 2*i-2, 2*i) ) };
S5 := {i: 1<=i<N (
  #CNOT(2*N-2*i, 2*N-2*i+1) (+) #Toffoli(2*N-2*i-1, 2*N-2*i-2, 2*N-2*i) ) };
S6 := {i: 1<=i<N ( #CNOT(2*i, 2*i+2) ) };
S7 := {i: 0<=i<N ( #CNOT(2*i, 2*i+1) (+) #X(2*i+1) ) };
codegen {S1 (+) S2 (+) S3 (+) S4 (+) S5 (+) S6 (+) S7} with {N=5};
)";

inline constexpr const char* kInit = R"(// init: initialization stage of the ancilla-free adder family
param N;
statement S1, S2, S3, S4, S5, S6, S7, S8;
S1 := {i: 1<=i<N ( #CNOT(2*i, 2*i+1) ) };
S2 := {i: i = N ( #CNOT(2*i-2, 2*i) ) };
S3 := {i: 1<=i<N-1 ( #CNOT(2*N-2-2*i, 2*N-2*i) ) };
S4 := {i: 0<=i<N-1 ( #Toffoli(2*i+1, 2*i, 2*i+2) ) };
S5 := {i: i = N ( #Toffoli(2*i-1, 2*i-2, 2*i) ) };
S6 := {i: 1<=i<N (
  #CNOT(2*N-2*i, 2*N-2*i+1) (+) #Toffoli(2*N-2*i-1, 2*N-2*i-2, 2*N-2*i) ) };
S7 := {i: 1<=i<N ( #CNOT(2*i, 2*i+2) ) };
S8 := {i: 0<=i<N ( #CNOT(2*i, 2*i+1) (+) #X(2*i+1) ) };
codegen {S1 (+) S2 (+) S3 (+) S4 (+) S5 (+) S6 (+) S7 (+) S8} with {N=5};
)";

inline constexpr const char* kCnt = R"(// cnt: binary coded ternary counter with count control
param N;
statement S1, S2;
S1 := {i: 0<=i<N ( #CNOT(3*i+1, 3*i+2) (+) #CNOT(3*i+2, 3*i+3) ) };
S2 := {i: 0<=i<N (
  #Toffoli(3*i, 3*i+1, 3*i+3) (+) #Toffoli(3*i, 3*i+2, 3*i+1)
  (+) #CNOT(3*i+3, 3*i+2) (+) #Toffoli(3*i+1, 3*i+2, 3*i+3) ) };
codegen {S1 (+) S2} with {N=5};
)";

inline constexpr const char* kRd = R"(// rd: reversible weight-counting function
param M, N;
statement S1, S2, S3;
S1 := {i: 0<=i<2*N ( #CNOT(i, i+5) ) };
S2 := {i: 0<=i<2*N ( #Toffoli(i, i+1, i+5) ) };
S3 := {i: M<=i<3*N+M ( #CNOT(i-M, i+1) ) };
codegen {S1 (+) S2 (+) S3} with {M=2, N=4};
)";

}  // namespace sources

/// The eight evaluation circuits.
inline const std::vector<Benchmark>& benchmark_suite() {
  static const std::vector<Benchmark> suite = {
      {"adder_mau", sources::kAdderMau, {{"N", 9}}, 3, 20, 55},
      {"cuccaro", sources::kCuccaro, {{"N", 6}}, 6, 14, 46},
      {"sum", sources::kSum, {{"N", 5}}, 7, 11, 36},
      {"init", sources::kInit, {{"N", 5}}, 8, 11, 35},
      {"cheung", sources::kCheung, {{"N", 6}}, 1, 18, 21},
      {"pipelined", sources::kPipelined, {{"N", 6}}, 13, 14, 75},
      {"cnt", sources::kCnt, {{"N", 5}}, 2, 16, 30},
      {"rd", sources::kRd, {{"M", 2}, {"N", 4}}, 3, 15, 28},
  };
  return suite;
}

inline const Benchmark* find_benchmark(const std::string& name) {
  for (const auto& b : benchmark_suite()) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

}  // namespace paqc
