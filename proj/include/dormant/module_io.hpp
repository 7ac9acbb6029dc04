#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dormant/diffmodule.hpp"

namespace dormant {

using ordered_json = nlohmann::ordered_json;

// wire format:
//   module: {"p": int, "m": int, "log": bool, "rank": int,
//            "matrices": [ [ [str, ...], ... ], ... ]}   (q+1 row-major n x n)
//   pinned: {"module": <module>, "vector": [str, ...]}
// entries use the canonical rational-function grammar of ratfunc.hpp

inline ordered_json module_to_json(const diffmodule& M) {
    ordered_json out;
    out["p"] = M.lv.p;
    out["m"] = M.lv.m;
    out["log"] = M.log;
    out["rank"] = M.n;
    ordered_json mats = ordered_json::array();
    for (const auto& A : M.A) {
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < A.rows; ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < A.cols; ++c) row.push_back(to_string(A.at(r, c)));
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    out["matrices"] = std::move(mats);
    return out;
}

inline diffmodule module_from_json(const ordered_json& j, bool check = true) {
    level_params lv;
    lv.p = j.at("p").get<fp>();
    lv.m = j.at("m").get<unsigned>();
    if (lv.p < 2) throw std::invalid_argument("p must be a prime >= 2");
    bool log = j.at("log").get<bool>();
    std::size_t n = j.at("rank").get<std::size_t>();
    const auto& mats = j.at("matrices");
    if (mats.size() != lv.q() + 1)
        throw std::invalid_argument("matrices must have p^(m+1)+1 entries, got " +
                                    std::to_string(mats.size()));
    std::vector<rmatrix> A;
    for (const auto& mj : mats) {
        if (mj.size() != n) throw std::invalid_argument("matrix row count != rank");
        rmatrix m(n, n, lv.p);
        for (std::size_t r = 0; r < n; ++r) {
            if (mj[r].size() != n) throw std::invalid_argument("matrix column count != rank");
            for (std::size_t c = 0; c < n; ++c)
                m.at(r, c) = parse_ratfunc(lv.p, mj[r][c].get<std::string>());
        }
        A.push_back(std::move(m));
    }
    return make_module(lv, log, std::move(A), check);
}

inline ordered_json vector_to_json(const rvector& v) {
    ordered_json out = ordered_json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline rvector vector_from_json(fp p, const ordered_json& j) {
    rvector v;
    for (const auto& x : j) v.push_back(parse_ratfunc(p, x.get<std::string>()));
    return v;
}

struct pinned_module {
    diffmodule M;
    rvector v;
};

inline ordered_json pinned_to_json(const pinned_module& P) {
    ordered_json out;
    out["module"] = module_to_json(P.M);
    out["vector"] = vector_to_json(P.v);
    return out;
}

inline pinned_module pinned_from_json(const ordered_json& j, bool check = true) {
    pinned_module P;
    P.M = module_from_json(j.at("module"), check);
    P.v = vector_from_json(P.M.lv.p, j.at("vector"));
    if (P.v.size() != P.M.n) throw std::invalid_argument("pinned vector length != rank");
    return P;
}

inline ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    ordered_json j;
    in >> j;
    return j;
}

}  // namespace dormant
