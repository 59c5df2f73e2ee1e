// Copyright 2026 The Arbor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "arbor/groups.hpp"

namespace arbor::testing {

inline Amalgam cyclic_amalgam(std::size_t h, const char* hg, std::size_t k, const char* kg,
                              std::size_t c, const char* h_image, const char* k_image) {
  FiniteGroup H = make_group(CyclicSpec{h, hg});
  FiniteGroup K = make_group(CyclicSpec{k, kg});
  FiniteGroup C = make_group(CyclicSpec{c, "z"});
  std::map<Elem, Elem> ih, ik;
  if (c > 1) {
    ih[1] = H.parse_word(h_image);
    ik[1] = K.parse_word(k_image);
  }
  return Amalgam::make(H, K, C, make_homomorphism(C, H, ih), make_homomorphism(C, K, ik));
}

// C4 *_{C2} C6 with z = a^2 = b^3.
inline Amalgam sl2z() { return cyclic_amalgam(4, "a", 6, "b", 2, "a^2", "b^3"); }
// C2 * C3.
inline Amalgam psl2z() { return cyclic_amalgam(2, "a", 3, "b", 1, "", ""); }
// C2 * C2.
inline Amalgam dihedral() { return cyclic_amalgam(2, "s", 2, "t", 1, "", ""); }

inline const char* kModelNames[] = {"dihedral", "sl2z", "psl2z"};

inline Amalgam model(const std::string& name) {
  if (name == "sl2z") return sl2z();
  if (name == "psl2z") return psl2z();
  return dihedral();
}

}  // namespace arbor::testing
