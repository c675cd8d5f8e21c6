/*
 * Copyright 2026 the enchain authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace enchain {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& why) {
    throw Error(Errc::ParseError, where + ": " + why);
}

const json& require(const json& obj, const char* field, const std::string& where) {
    auto it = obj.find(field);
    if (it == obj.end()) {
        parse_fail(where, std::string("missing field '") + field + "'");
    }
    return *it;
}

NodeId node_id_from(const json& v, const std::string& where) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<std::int64_t>());
    }
    parse_fail(where, "node id must be a string or integer");
}

Bytes hex_field(const json& v, const char* field, const std::string& where) {
    if (!v.is_string()) {
        parse_fail(where, std::string("field '") + field + "' must be a hex string");
    }
    try {
        return from_hex(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        parse_fail(where, std::string("field '") + field + "': " + e.what());
    }
}

Edge edge_from(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) {
        parse_fail(where, "edge must be a [from, to] pair");
    }
    return Edge{node_id_from(v[0], where), node_id_from(v[1], where)};
}

AttackSpec attack_from_json(const json& a, const std::string& where) {
    if (!a.is_object()) {
        parse_fail(where, "attack must be an object");
    }
    const std::string type = require(a, "type", where).get<std::string>();
    if (type == "ddrc_swap_tags") {
        const json& nodes = require(a, "nodes", where);
        if (!nodes.is_array() || nodes.size() != 2) {
            parse_fail(where, "'nodes' must name two nodes");
        }
        return AttackSpec{DdrcAttack{SwapTags{node_id_from(nodes[0], where),
                                              node_id_from(nodes[1], where)}}};
    }
    if (type == "ddrc_rewire_edge") {
        Edge old_edge{node_id_from(require(a, "from", where), where),
                      node_id_from(require(a, "old_to", where), where)};
        return AttackSpec{DdrcAttack{
            RewireEdge{old_edge, node_id_from(require(a, "new_to", where), where)}}};
    }
    if (type == "ddrc_drop_node") {
        return AttackSpec{DdrcAttack{DropNode{node_id_from(require(a, "node", where), where)}}};
    }
    if (type == "ddrc_duplicate_node") {
        NodeId node = node_id_from(require(a, "node", where), where);
        Tag fresh;
        if (a.contains("tag_hex")) {
            Bytes raw = hex_field(a["tag_hex"], "tag_hex", where);
            if (raw.size() != kTagSize) {
                parse_fail(where, "'tag_hex' must encode 8 octets");
            }
            fresh = Tag::from_bytes(as_span(raw));
        } else {
            // Derive a deterministic fresh tag from the twin's name.
            Digest d = hash_bytes(as_span(to_bytes(node + "+dup")));
            fresh = Tag::from_bytes(ByteSpan(d.octets.data(), kTagSize));
        }
        return AttackSpec{DdrcAttack{DuplicateNode{std::move(node), fresh}}};
    }
    if (type == "otm_tamper") {
        OtmTamper t;
        t.edge = edge_from(require(a, "edge", where), where);
        const json& idx = require(a, "octet_index", where);
        if (!idx.is_number_unsigned() && !idx.is_number_integer()) {
            parse_fail(where, "'octet_index' must be a non-negative integer");
        }
        std::int64_t i = idx.get<std::int64_t>();
        if (i < 0) {
            parse_fail(where, "'octet_index' must be non-negative");
        }
        t.octet_index = static_cast<std::size_t>(i);
        const json& mask = require(a, "xor_mask", where);
        std::int64_t m = mask.get<std::int64_t>();
        if (m < 1 || m > 255) {
            parse_fail(where, "'xor_mask' must be in [1, 255]");
        }
        t.xor_mask = static_cast<Byte>(m);
        return AttackSpec{t};
    }
    if (type == "otm_misroute") {
        OtmMisroute m;
        m.victim_edge = edge_from(require(a, "edge", where), where);
        m.substitute_from = node_id_from(require(a, "substitute_from", where), where);
        return AttackSpec{m};
    }
    parse_fail(where, "unknown attack type '" + type + "'");
}

Scenario parse_impl(const std::string& json_text) {
    json doc = json::parse(json_text);
    if (!doc.is_object()) {
        parse_fail("scenario", "top level must be an object");
    }

    Scenario scenario;

    const json& enclaves_json = require(doc, "enclaves", "scenario");
    std::set<EnclaveId> declared;
    if (!enclaves_json.is_array() || enclaves_json.empty()) {
        parse_fail("scenario.enclaves", "must be a nonempty list of enclave ids");
    }
    for (const json& e : enclaves_json) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0) {
            parse_fail("scenario.enclaves", "enclave ids are small non-negative integers");
        }
        if (!declared.insert(static_cast<EnclaveId>(e.get<std::int64_t>())).second) {
            parse_fail("scenario.enclaves", "duplicate enclave id");
        }
    }

    const json& nodes_json = require(doc, "nodes", "scenario");
    if (!nodes_json.is_array() || nodes_json.empty()) {
        parse_fail("scenario.nodes", "must be a nonempty list");
    }
    std::vector<PlanNode> nodes;
    std::set<EnclaveId> referenced;
    for (std::size_t i = 0; i < nodes_json.size(); ++i) {
        const std::string where = "scenario.nodes[" + std::to_string(i) + "]";
        const json& n = nodes_json[i];
        if (!n.is_object()) {
            parse_fail(where, "must be an object");
        }
        PlanNode node;
        node.id = node_id_from(require(n, "id", where), where);
        Bytes tag_raw = hex_field(require(n, "tag_hex", where), "tag_hex", where);
        if (tag_raw.size() != kTagSize) {
            parse_fail(where, "'tag_hex' must encode exactly 8 octets");
        }
        node.tag = Tag::from_bytes(as_span(tag_raw));
        const json& enclave = require(n, "enclave", where);
        if (!enclave.is_number_integer() || enclave.get<std::int64_t>() < 0) {
            parse_fail(where, "'enclave' must be a non-negative integer");
        }
        node.enclave = static_cast<EnclaveId>(enclave.get<std::int64_t>());
        if (!declared.count(node.enclave)) {
            parse_fail(where, "enclave " + std::to_string(node.enclave) + " not declared");
        }
        referenced.insert(node.enclave);
        node.function = require(n, "function", where).get<std::string>();
        nodes.push_back(std::move(node));
    }
    for (EnclaveId e : declared) {
        if (!referenced.count(e)) {
            parse_fail("scenario.enclaves",
                       "enclave " + std::to_string(e) + " referenced by no node");
        }
    }

    const json& edges_json = require(doc, "edges", "scenario");
    if (!edges_json.is_array()) {
        parse_fail("scenario.edges", "must be a list");
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < edges_json.size(); ++i) {
        edges.push_back(edge_from(edges_json[i], "scenario.edges[" + std::to_string(i) + "]"));
    }

    scenario.plan = ExecutionPlan(std::move(nodes), std::move(edges));
    if (auto issue = scenario.plan.validate()) {
        parse_fail("scenario", "invalid plan: " + issue->to_string());
    }

    scenario.request_id = require(doc, "request", "scenario").get<std::string>();
    scenario.data = hex_field(require(doc, "data_hex", "scenario"), "data_hex", "scenario");

    if (doc.contains("attacks")) {
        const json& attacks = doc["attacks"];
        if (!attacks.is_array()) {
            parse_fail("scenario.attacks", "must be a list");
        }
        for (std::size_t i = 0; i < attacks.size(); ++i) {
            scenario.attacks.push_back(
                attack_from_json(attacks[i], "scenario.attacks[" + std::to_string(i) + "]"));
        }
    }
    if (doc.contains("seed")) {
        const json& seed = doc["seed"];
        if (seed.is_number_unsigned()) {
            scenario.seed = seed.get<std::uint64_t>();
        } else if (seed.is_number_integer() && seed.get<std::int64_t>() >= 0) {
            scenario.seed = static_cast<std::uint64_t>(seed.get<std::int64_t>());
        } else {
            parse_fail("scenario.seed", "must be a non-negative integer");
        }
    }
    return scenario;
}

}  // namespace

Scenario parse_scenario_json(const std::string& json_text) {
    try {
        return parse_impl(json_text);
    } catch (const json::exception& e) {
        // Parse errors carry the byte offset; type errors name the
        // offending access.
        throw Error(Errc::ParseError, e.what());
    }
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::IoError, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_json(buf.str());
}

}  // namespace enchain
