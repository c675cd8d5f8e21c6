// Shared reference plan: three sources, a three-way join, and a tail
// chain spanning two enclaves, covering every hash-input and
// hash-output case at once.

#ifndef ENCHAIN_TESTS_FIXTURES_HPP
#define ENCHAIN_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "digest.hpp"
#include "plan.hpp"

namespace enchain::testfix {

inline Tag tag_of(unsigned value) {
    Tag t{};
    t.octets[kTagSize - 1] = static_cast<Byte>(value);
    return t;
}

inline Bytes tag_octets(unsigned value) {
    Tag t = tag_of(value);
    return Bytes(t.octets.begin(), t.octets.end());
}

// Topology: 1->2, {2,3,4}->5, 5->6, 6->7; enclave 1 hosts {1,2,4,5},
// enclave 2 hosts {3,6,7}; cross edges are 3->5 and 5->6.
inline ExecutionPlan hybrid_plan(const std::string& function = "identity") {
    std::vector<PlanNode> nodes;
    for (unsigned i = 1; i <= 7; ++i) {
        PlanNode n;
        n.id = std::to_string(i);
        n.tag = tag_of(i);
        n.enclave = (i == 3 || i == 6 || i == 7) ? 2 : 1;
        n.function = function;
        nodes.push_back(std::move(n));
    }
    std::vector<Edge> edges{{"1", "2"}, {"2", "5"}, {"3", "5"},
                            {"4", "5"}, {"5", "6"}, {"6", "7"}};
    return ExecutionPlan(std::move(nodes), std::move(edges));
}

inline std::string scenario_path(const std::string& name) {
    return std::string(ENCHAIN_SCENARIO_DIR) + "/" + name;
}

}  // namespace enchain::testfix

#endif  // ENCHAIN_TESTS_FIXTURES_HPP
