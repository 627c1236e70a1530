#pragma once

#include <string>
#include <vector>

#include "crg/group.hpp"
#include "crg/io.hpp"

namespace crg {

/// Symmetric group on the (n-1)-dimensional quotient of C^n by the all-ones vector.
ReflectionGroup symmetric_group(int n);
/// G(de, e, r) as monomial matrices.
ReflectionGroup imprimitive_group(int d, int e, int r);
/// "g4", "g5" or "g24" from the shipped generator files.
ReflectionGroup exceptional_group(const std::string& name);

/// Dispatches on name in {sym, imprimitive, g4, g5, g24}; throws std::invalid_argument otherwise.
ReflectionGroup builtin(const std::string& name, const std::vector<int>& params = {});
/// Parses identifiers such as "sym(4)", "imprimitive(3,1,2)" or "g24".
ReflectionGroup builtin_from_string(const std::string& id);

/// Directory holding the exceptional generator files (CRG_DATA_DIR overrides).
std::string data_directory();

/// Closes the generators of a spec and checks the reflection property.
ReflectionGroup group_from_spec(const GroupSpec& spec);

}  // namespace crg
