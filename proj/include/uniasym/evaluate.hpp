// Front door: routes a request to the asymptotic machinery (any m through
// the recurrence) or to the series oracle.

#pragma once

#include "uniasym/expansion.hpp"
#include "uniasym/higher_m.hpp"
#include "uniasym/oracle.hpp"

namespace uniasym {

template <RealScalar S>
ExpansionResult<S> evaluate(const Params<S>& p, int K, Method method = Method::Auto,
                            const PrecisionConfig& oracle_cfg = {}) {
  p.validate();
  if (method == Method::Oracle) {
    auto v = reference_logscaled(p, oracle_cfg);
    ExpansionResult<S> r;
    r.value = logscaled_cast<S>(v);
    r.regime = geometry(p).regime;
    r.method = Method::Oracle;
    r.terms_used = 0;
    r.last_term_magnitude = S(0);
    return r;
  }
  return eval_recurrence(p, K, method);
}

}  // namespace uniasym
