#pragma once

#include <optional>

#include "sstt/kernel/context.h"
#include "sstt/kernel/errors.h"
#include "sstt/kernel/term.h"

namespace sstt::kernel {

// Replaces free variables that are not bound locally by constants of `env`,
// and checks that every name, cube variable, and tope is in scope. Names in
// `failed` raise dependency errors.
Term resolve(const Context& ctx, const Term& t, const std::set<std::string>& failed = {});

// Weak head normal form under the context's restriction: unfolds definitions,
// contracts beta/projection/J redexes, applies extension terms, reduces case
// splits whose guard is entailed, and sends an extension application whose
// point lies in the subshape to the prescribed boundary.
Term whnf(const Context& ctx, const Term& t);

// Type of a neutral term, assuming it is well typed; null if unknown.
Term synth(const Context& ctx, const Term& t);

Term infer(const Context& ctx, const Term& t);
void check(const Context& ctx, const Term& t, const Term& type);
// `type` must be a type: checks it against U.
void check_type(const Context& ctx, const Term& type);

// Definitional equality at `type`, deciding per clause of the restriction.
bool def_equal(const Context& ctx, const Term& a, const Term& b, const Term& type);

// Beta/extension normal form. With a type, binders are annotated as they are
// crossed, which lets extension boundaries of bound variables compute.
Term normalize(const Context& ctx, const Term& t, const Term& type = Term());

}  // namespace sstt::kernel
