#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbwdeg/degenring.hpp"
#include "pbwdeg/pbwgrade.hpp"
#include "pbwdeg/rootsys.hpp"

namespace pbwdeg::report {

using Json = nlohmann::ordered_json;

inline Json weight_json(const Weight &w) { return Json(w.coords); }

inline Json to_json(const F0Report &r) {
    Json j;
    j["cartan"] = r.cartan;
    j["p"] = r.p;
    j["weight"] = weight_json(r.weight);
    j["degree"] = r.degree;
    j["nonzero"] = r.nonzero;
    j["graded_dims"] = r.graded_dims;
    j["elapsed_ms"] = r.elapsed_ms;
    j["tool_version"] = r.tool_version;
    return j;
}

inline Json to_json(const DegreeRow &t) {
    Json j;
    j["n"] = t.n;
    j["dim_phi_Vn"] = t.dim_phi_Vn;
    j["dim_im_cap_Tn"] = t.dim_im_cap_Tn;
    j["gr_image"] = t.gr_image;
    return j;
}

inline Json table_json(const std::vector<DegreeRow> &rows) {
    Json a = Json::array();
    for (const auto &t : rows)
        a.push_back(to_json(t));
    return a;
}

inline Json to_json(const MultReport &r) {
    Json j;
    j["cartan"] = r.cartan;
    j["p"] = r.p;
    j["lam"] = weight_json(r.lam);
    j["mu"] = weight_json(r.mu);
    j["dim_source"] = r.dim_source;
    j["rank_phi"] = r.rank_phi;
    j["injective_ungraded"] = r.injective_ungraded;
    j["strict"] = r.strict;
    j["gr_injective"] = r.gr_injective;
    j["verdict_mult_surjective"] = r.verdict_mult_surjective;
    j["table"] = table_json(r.table);
    j["note"] = r.note;
    j["tool_version"] = r.tool_version;
    return j;
}

inline Json to_json(const GenReport &r) {
    Json j;
    j["cartan"] = r.cartan;
    j["p"] = r.p;
    j["lam"] = weight_json(r.lam);
    j["n_max"] = r.n_max;
    Json rows = Json::array();
    for (const auto &g : r.rows) {
        Json x;
        x["n"] = g.n;
        x["injective_ungraded"] = g.injective_ungraded;
        x["strict"] = g.strict;
        x["gr_injective"] = g.gr_injective;
        x["gr_image_total"] = g.gr_image_total;
        x["weyl_dim"] = g.weyl_dim;
        x["table"] = table_json(g.table);
        rows.push_back(std::move(x));
    }
    j["rows"] = std::move(rows);
    j["generated"] = r.generated;
    j["tool_version"] = r.tool_version;
    return j;
}

inline Json to_json(const HilbertReport &r) {
    Json j;
    j["cartan"] = r.cartan;
    j["p"] = r.p;
    j["lam"] = weight_json(r.lam);
    j["lam_star"] = weight_json(r.lam_star);
    j["n_max"] = r.n_max;
    j["h"] = r.h;
    j["weyl_dim"] = r.weyl_dims;
    j["profile"] = r.profile;
    j["tool_version"] = r.tool_version;
    return j;
}

// CSV: one row per degree (or per n), header first.

inline std::string to_csv(const F0Report &r) {
    std::ostringstream os;
    os << "cartan,p,weight,degree,nonzero,n,graded_dim\n";
    for (std::size_t n = 0; n < r.graded_dims.size(); ++n)
        os << r.cartan << ',' << r.p << ",\"" << r.weight.to_string() << "\"," << r.degree << ','
           << (r.nonzero ? "true" : "false") << ',' << n << ',' << r.graded_dims[n] << '\n';
    return os.str();
}

inline std::string to_csv(const MultReport &r) {
    std::ostringstream os;
    os << "cartan,p,lam,mu,n,dim_phi_Vn,dim_im_cap_Tn,gr_image,injective_ungraded,strict,verdict_mult_surjective\n";
    for (const auto &t : r.table)
        os << r.cartan << ',' << r.p << ",\"" << r.lam.to_string() << "\",\"" << r.mu.to_string() << "\","
           << t.n << ',' << t.dim_phi_Vn << ',' << t.dim_im_cap_Tn << ',' << t.gr_image << ','
           << (r.injective_ungraded ? "true" : "false") << ',' << (r.strict ? "true" : "false") << ','
           << (r.verdict_mult_surjective ? "true" : "false") << '\n';
    return os.str();
}

inline std::string to_csv(const GenReport &r) {
    std::ostringstream os;
    os << "cartan,p,lam,n,degree,dim_phi_Vn,dim_im_cap_Tn,gr_image,gr_injective\n";
    for (const auto &g : r.rows)
        for (const auto &t : g.table)
            os << r.cartan << ',' << r.p << ",\"" << r.lam.to_string() << "\"," << g.n << ',' << t.n << ','
               << t.dim_phi_Vn << ',' << t.dim_im_cap_Tn << ',' << t.gr_image << ','
               << (g.gr_injective ? "true" : "false") << '\n';
    return os.str();
}

inline std::string to_csv(const HilbertReport &r) {
    std::ostringstream os;
    os << "cartan,p,lam,n,h,weyl_dim\n";
    for (std::size_t n = 0; n < r.h.size(); ++n)
        os << r.cartan << ',' << r.p << ",\"" << r.lam.to_string() << "\"," << n << ',' << r.h[n] << ','
           << r.weyl_dims[n] << '\n';
    return os.str();
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string dims_text(const std::vector<std::size_t> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

inline std::string to_table(const F0Report &r) {
    std::ostringstream os;
    os << "type         " << r.cartan << "\n"
       << "p            " << r.p << "\n"
       << "weight       (" << r.weight.to_string() << ")\n"
       << "degree       " << r.degree << "\n"
       << "f0 v nonzero " << yes_no(r.nonzero) << "\n"
       << "graded dims  " << dims_text(r.graded_dims) << "\n"
       << "elapsed ms   " << std::fixed << std::setprecision(1) << r.elapsed_ms << "\n";
    return os.str();
}

inline std::string degree_table(const std::vector<DegreeRow> &rows) {
    std::ostringstream os;
    os << std::setw(4) << "n" << std::setw(12) << "dim phi(Vn)" << std::setw(14) << "dim im^Tn"
       << std::setw(10) << "gr image" << "\n";
    for (const auto &t : rows)
        os << std::setw(4) << t.n << std::setw(12) << t.dim_phi_Vn << std::setw(14) << t.dim_im_cap_Tn
           << std::setw(10) << t.gr_image << "\n";
    return os.str();
}

inline std::string to_table(const MultReport &r) {
    std::ostringstream os;
    os << r.cartan << " p=" << r.p << " lam=(" << r.lam.to_string() << ") mu=(" << r.mu.to_string() << ")\n"
       << degree_table(r.table) << "injective " << yes_no(r.injective_ungraded) << ", strict "
       << yes_no(r.strict) << ", multiplication surjective " << yes_no(r.verdict_mult_surjective) << "\n"
       << r.note << "\n";
    return os.str();
}

inline std::string to_table(const GenReport &r) {
    std::ostringstream os;
    os << r.cartan << " p=" << r.p << " lam=(" << r.lam.to_string() << ")\n";
    for (const auto &g : r.rows)
        os << "n=" << g.n << ": gr-injective " << yes_no(g.gr_injective) << ", graded image "
           << g.gr_image_total << " of " << g.weyl_dim << "\n";
    os << "generated in degree 1 up to n=" << r.n_max << ": " << yes_no(r.generated) << "\n";
    return os.str();
}

inline std::string to_table(const HilbertReport &r) {
    std::ostringstream os;
    os << r.cartan << " p=" << r.p << " lam=(" << r.lam.to_string() << ") lam*=(" << r.lam_star.to_string()
       << ")\n"
       << std::setw(4) << "n" << std::setw(10) << "h(n)" << std::setw(10) << "weyl dim" << "  profile\n";
    for (std::size_t n = 0; n < r.h.size(); ++n)
        os << std::setw(4) << n << std::setw(10) << r.h[n] << std::setw(10) << r.weyl_dims[n] << "  "
           << dims_text(r.profile[n]) << "\n";
    return os.str();
}

} // namespace pbwdeg::report
