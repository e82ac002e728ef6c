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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paqc {

enum class TransformKind { Base, Feautrier, PlutoMin, PlutoMax };

inline const char* to_string(TransformKind t) {
  switch (t) {
    case TransformKind::Base: return "base";
    case TransformKind::Feautrier: return "feautrier";
    case TransformKind::PlutoMin: return "plutomin";
    case TransformKind::PlutoMax: return "plutomax";
  }
  return "?";
}

inline std::optional<TransformKind> parse_transform(std::string_view name) {
  for (auto t : {TransformKind::Base, TransformKind::Feautrier, TransformKind::PlutoMin,
                 TransformKind::PlutoMax}) {
    if (name == to_string(t)) return t;
  }
  return std::nullopt;
}

inline std::vector<TransformKind> all_transforms() {
  return {TransformKind::Base, TransformKind::Feautrier, TransformKind::PlutoMin,
          TransformKind::PlutoMax};
}

}  // namespace paqc
