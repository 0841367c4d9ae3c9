#pragma once

#include <set>

#include "qfinv/field.hpp"
#include "qfinv/invariant_value.hpp"

namespace qfinv {

/// AU(f) by the recursion rules:
///   base           {2^r}
///   cdvf(k)        AU(k) + AU(k)
///   ratfn(K)       {2 m_s(K)}
///   semiglobal     union over components of AU(c) + AU(c), plus {2} iff the
///                  reduction graph is not a tree.
/// Throws InvalidDescriptor, HypothesisRequired or NotMsUsComputable.
AUSet au_set(const FieldDescriptor& f);

/// min AU(f).
InvariantValue m_invariant(const FieldDescriptor& f);

/// max AU(f).
InvariantValue u_invariant(const FieldDescriptor& f);

/// { 2^j | 1 <= j <= n } u { 2^(n+r+1) } where 2^r = m_s(base). For n = 0
/// this returns {2^r}, the base itself.
std::set<InvariantValue> possible_m(unsigned n, const BaseClass& base);

}  // namespace qfinv
