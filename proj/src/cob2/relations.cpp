#include "tqftwb/cob2.hpp"

namespace tqftwb::cob {

const std::vector<RelationInstance>& relation_instances() {
  static const std::vector<RelationInstance> all = [] {
    std::vector<RelationInstance> r = {
        {"unit-left", "mu . (eta * id(1))", "id(1)"},
        {"unit-right", "mu . (id(1) * eta)", "id(1)"},
        {"counit-left", "(eps * id(1)) . delta", "id(1)"},
        {"counit-right", "(id(1) * eps) . delta", "id(1)"},
        {"commutativity", "mu . tau", "mu"},
        {"cocommutativity", "tau . delta", "delta"},
        {"frobenius-left", "(id(1) * mu) . (delta * id(1))", "delta . mu"},
        {"frobenius-right", "(mu * id(1)) . (id(1) * delta)", "delta . mu"},
        {"associativity", "mu . (mu * id(1))", "mu . (id(1) * mu)"},
        {"coassociativity", "(delta * id(1)) . delta", "(id(1) * delta) . delta"},
    };
    for (Generator g : {Generator::eta, Generator::mu, Generator::delta, Generator::eps,
                        Generator::tau}) {
      const Signature s = signature(g);
      const std::string n(name(g));
      r.push_back({"identity-after-" + n, "id(" + std::to_string(s.cod) + ") . " + n, n});
      r.push_back({"identity-before-" + n, n + " . id(" + std::to_string(s.dom) + ")", n});
    }
    r.push_back({"tau-involution", "tau . tau", "id(2)"});
    return r;
  }();
  return all;
}

}  // namespace tqftwb::cob
