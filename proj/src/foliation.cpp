#include "folink/foliation.hpp"

#include <stdexcept>

#include <json.hpp>

namespace folink {

namespace {

std::size_t ancilla_count(const CssCode& code, std::size_t site) {
    // Odd sites measure Z stabilizers, even sites X stabilizers.
    return site % 2 == 1 ? code.h_z.rows() : code.h_x.rows();
}

struct Layout {
    std::vector<std::size_t> site_offset;  // global index of first qubit at site s (1-based)
    std::size_t total = 0;
};

Layout make_layout(const CssCode& code, std::size_t sites) {
    Layout layout;
    layout.site_offset.assign(sites + 2, 0);
    std::size_t next = 0;
    for (std::size_t s = 1; s <= sites; ++s) {
        layout.site_offset[s] = next;
        next += code.n + ancilla_count(code, s);
    }
    layout.total = next;
    return layout;
}

}  // namespace

FoliatedChain foliate(const CssCode& code, std::size_t hops) {
    if (hops < 1) {
        throw std::invalid_argument("hop count must be at least 1");
    }
    const std::size_t sites = 2 * hops + 1;
    const Layout layout = make_layout(code, sites);

    FoliatedChain chain;
    chain.code = code;
    chain.hops = hops;
    chain.sites = sites;
    chain.total_qubits = layout.total;

    for (const SubgraphLabel label : {SubgraphLabel::primal, SubgraphLabel::dual}) {
        SyndromeSubgraph sub;
        sub.label = label;
        const bool primal = label == SubgraphLabel::primal;
        const std::size_t data_parity = primal ? 1 : 0;     // site parity carrying data qubits
        const BitMatrix& checks = primal ? code.h_x : code.h_z;
        const BitMatrix& code_logicals = primal ? code.l_x : code.l_z;

        // Column maps: (site, local) -> subgraph column.
        std::vector<std::size_t> data_col(sites + 1, 0);
        std::vector<std::size_t> ancilla_col(sites + 1, 0);
        for (std::size_t s = 1; s <= sites; ++s) {
            if (s % 2 == data_parity) {
                data_col[s] = sub.qubits.size();
                for (std::size_t q = 0; q < code.n; ++q) {
                    const bool channel = primal && s <= sites - 2;
                    sub.qubits.push_back({s, QubitKind::data, q, layout.site_offset[s] + q});
                    sub.loss_class.push_back(channel ? LossClass::channel : LossClass::internal);
                }
            } else {
                ancilla_col[s] = sub.qubits.size();
                for (std::size_t i = 0; i < ancilla_count(code, s); ++i) {
                    sub.qubits.push_back(
                        {s, QubitKind::ancilla, i, layout.site_offset[s] + code.n + i});
                    sub.loss_class.push_back(LossClass::internal);
                }
            }
        }

        std::size_t data_sites = 0;
        for (std::size_t s = 1; s <= sites; ++s) {
            if (s % 2 == data_parity) {
                ++data_sites;
            }
        }
        sub.stabilizers = BitMatrix(data_sites * checks.rows(), sub.qubits.size());
        std::size_t row = 0;
        for (std::size_t s = 1; s <= sites; ++s) {
            if (s % 2 != data_parity) {
                continue;
            }
            for (std::size_t i = 0; i < checks.rows(); ++i, ++row) {
                for (std::size_t q = 0; q < code.n; ++q) {
                    if (checks.get(i, q)) {
                        sub.stabilizers.set(row, data_col[s] + q, true);
                    }
                }
                if (s > 1) {
                    sub.stabilizers.set(row, ancilla_col[s - 1] + i, true);
                }
                if (s < sites) {
                    sub.stabilizers.set(row, ancilla_col[s + 1] + i, true);
                }
            }
        }

        sub.logicals = BitMatrix(code.k, sub.qubits.size());
        for (std::size_t i = 0; i < code.k; ++i) {
            for (std::size_t s = 1; s <= sites; ++s) {
                if (s % 2 != data_parity) {
                    continue;
                }
                for (std::size_t q = 0; q < code.n; ++q) {
                    if (code_logicals.get(i, q)) {
                        sub.logicals.set(i, data_col[s] + q, true);
                    }
                }
            }
        }

        (primal ? chain.primal : chain.dual) = std::move(sub);
    }
    return chain;
}

namespace {

void check_subgraph(const FoliatedChain& chain, const SyndromeSubgraph& sub) {
    const CssCode& code = chain.code;
    const bool primal = sub.label == SubgraphLabel::primal;
    const char* name = primal ? "primal" : "dual";
    const BitMatrix& checks = primal ? code.h_x : code.h_z;
    const BitMatrix& code_logicals = primal ? code.l_x : code.l_z;

    for (std::size_t r = 0; r < sub.stabilizers.rows(); ++r) {
        std::size_t data_site = 0;
        std::vector<bool> data_support(code.n, false);
        std::vector<std::pair<std::size_t, std::size_t>> ancillas;  // (site, local)
        for (std::size_t c = 0; c < sub.qubits.size(); ++c) {
            if (!sub.stabilizers.get(r, c)) {
                continue;
            }
            const QubitId& q = sub.qubits[c];
            if (q.kind == QubitKind::data) {
                if (data_site != 0 && data_site != q.site) {
                    throw std::runtime_error(std::string(name) + " stabilizer row " +
                                             std::to_string(r) + " spans multiple data sites");
                }
                data_site = q.site;
                data_support[q.local] = true;
            } else {
                ancillas.emplace_back(q.site, q.local);
            }
        }
        if (data_site == 0) {
            throw std::runtime_error(std::string(name) + " stabilizer row " + std::to_string(r) +
                                     " has no data support");
        }
        // Data support must match one parity-check row; ancillas must sit at
        // the two neighbor sites (one at a boundary) with that row index.
        std::vector<bool> matching_rows(checks.rows(), false);
        bool any_match = false;
        for (std::size_t i = 0; i < checks.rows(); ++i) {
            bool match = true;
            for (std::size_t q = 0; q < code.n; ++q) {
                if (checks.get(i, q) != data_support[q]) {
                    match = false;
                    break;
                }
            }
            matching_rows[i] = match;
            any_match = any_match || match;
        }
        if (!any_match) {
            throw std::runtime_error(std::string(name) + " stabilizer row " + std::to_string(r) +
                                     " at site " + std::to_string(data_site) +
                                     " does not match any parity-check row");
        }
        const std::size_t expected =
            (data_site > 1 ? 1U : 0U) + (data_site < chain.sites ? 1U : 0U);
        if (ancillas.size() != expected) {
            throw std::runtime_error(std::string(name) + " stabilizer row " + std::to_string(r) +
                                     " has wrong ancilla count at site " +
                                     std::to_string(data_site));
        }
        for (const auto& [site, local] : ancillas) {
            if ((site != data_site - 1 && site != data_site + 1) || !matching_rows[local]) {
                throw std::runtime_error(std::string(name) + " stabilizer row " +
                                         std::to_string(r) + " has a misplaced ancilla bit");
            }
        }
    }

    for (std::size_t i = 0; i < sub.logicals.rows(); ++i) {
        for (std::size_t c = 0; c < sub.qubits.size(); ++c) {
            const QubitId& q = sub.qubits[c];
            const bool bit = sub.logicals.get(i, c);
            if (q.kind == QubitKind::ancilla) {
                if (bit) {
                    throw std::runtime_error(std::string(name) + " logical row " +
                                             std::to_string(i) + " touches an ancilla at site " +
                                             std::to_string(q.site));
                }
            } else if (bit != code_logicals.get(i, q.local)) {
                throw std::runtime_error(std::string(name) + " logical row " + std::to_string(i) +
                                         " deviates from the code logical at site " +
                                         std::to_string(q.site));
            }
        }
    }

    for (std::size_t c = 0; c < sub.qubits.size(); ++c) {
        const QubitId& q = sub.qubits[c];
        const bool expect_channel =
            primal && q.kind == QubitKind::data && q.site <= chain.sites - 2;
        if ((sub.loss_class[c] == LossClass::channel) != expect_channel) {
            throw std::runtime_error(std::string(name) + " qubit at site " +
                                     std::to_string(q.site) + " has wrong loss class");
        }
    }
}

}  // namespace

ConsistencyReport subgraph_consistency_check(const FoliatedChain& chain) {
    check_subgraph(chain, chain.primal);
    check_subgraph(chain, chain.dual);
    ConsistencyReport report;
    report.primal_stabilizers = chain.primal.stabilizers.rows();
    report.dual_stabilizers = chain.dual.stabilizers.rows();
    report.primal_logicals = chain.primal.logicals.rows();
    report.dual_logicals = chain.dual.logicals.rows();
    for (std::size_t c = 0; c < chain.primal.qubits.size(); ++c) {
        if (chain.primal.loss_class[c] == LossClass::channel) {
            ++report.channel_qubits;
        }
    }
    return report;
}

namespace {

nlohmann::json subgraph_to_json(const SyndromeSubgraph& sub) {
    nlohmann::json j;
    nlohmann::json qubits = nlohmann::json::array();
    for (std::size_t c = 0; c < sub.qubits.size(); ++c) {
        const QubitId& q = sub.qubits[c];
        qubits.push_back({{"site", q.site},
                          {"kind", q.kind == QubitKind::data ? "data" : "ancilla"},
                          {"local", q.local},
                          {"global", q.global},
                          {"loss_class",
                           sub.loss_class[c] == LossClass::channel ? "channel" : "internal"}});
    }
    j["qubits"] = std::move(qubits);
    auto rows_as_globals = [&sub](const BitMatrix& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (m.get(r, c)) {
                    row.push_back(sub.qubits[c].global);
                }
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["stabilizers"] = rows_as_globals(sub.stabilizers);
    j["logicals"] = rows_as_globals(sub.logicals);
    return j;
}

}  // namespace

std::string chain_to_json(const FoliatedChain& chain) {
    nlohmann::json j;
    j["code"] = nlohmann::json::parse(code_to_json(chain.code));
    j["hops"] = chain.hops;
    j["sites"] = chain.sites;
    j["total_qubits"] = chain.total_qubits;
    j["primal"] = subgraph_to_json(chain.primal);
    j["dual"] = subgraph_to_json(chain.dual);
    return j.dump(2) + "\n";
}

FoliatedChain chain_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const CssCode code = code_from_json(j.at("code").dump());
    return foliate(code, j.at("hops").get<std::size_t>());
}

}  // namespace folink
