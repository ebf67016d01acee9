#include "purindex/report.hpp"

#include <sstream>

namespace purindex {

using nlohmann::ordered_json;

namespace {

std::string S(long v) { return std::to_string(v); }
std::string S(const mpz_class& v) { return v.get_str(); }
std::string S(const Valuation& v) { return v.str(); }

ordered_json pair_json(long x, const Valuation& y) {
    return ordered_json::array({S(x), S(y)});
}

ordered_json pair_json(long x, long y) {
    return ordered_json::array({S(x), S(y)});
}

ordered_json vertices_json(const std::vector<std::pair<long, long>>& vs) {
    ordered_json out = ordered_json::array();
    for (const auto& [x, y] : vs) out.push_back(pair_json(x, y));
    return out;
}

std::string slope_str(const Side& sd) {
    return "-" + S(sd.h_red) + "/" + S(sd.e_red);
}

ordered_json witness_json(const GeneratorWitness& w) {
    ordered_json out;
    out["i"] = S(w.i);
    out["j"] = S(w.j);
    out["g"] = w.g.str();
    return out;
}

ordered_json certificate_json(const Certificate& c) {
    ordered_json out;
    out["condition"] = S(c.condition);
    out["p"] = S(c.evidence.p);
    out["f_res"] = S(c.evidence.f_res);
    out["P_f"] = S(c.evidence.P_f);
    out["N_f"] = S(c.evidence.N_f);
    return out;
}

const char* source_str(CensusSource s) {
    switch (s) {
        case CensusSource::FirstOrder: return "first-order";
        case CensusSource::SecondOrder: return "order-2";
        default: return "oracle";
    }
}

}  // namespace

ordered_json order2_json(const Order2Result& r) {
    ordered_json out;
    out["e1"] = S(r.e1);
    out["phi2"] = r.phi2.str();
    ordered_json verts = ordered_json::array();
    if (!r.sides.empty()) {
        verts.push_back(pair_json(r.sides.front().s, r.sides.front().us));
        for (const Side& sd : r.sides) verts.push_back(pair_json(sd.end_x(), sd.end_y()));
    }
    out["vertices"] = verts;
    out["ind2"] = S(r.ind2);
    if (r.census) {
        ordered_json cj = ordered_json::array();
        for (const Order2Prime& q : *r.census) {
            ordered_json e;
            e["e"] = S(q.e);
            e["f"] = S(q.f_res);
            cj.push_back(e);
        }
        out["census"] = cj;
    } else {
        out["census"] = nullptr;
    }
    return out;
}

ordered_json ore_json(const OreResult& r) {
    ordered_json out;
    out["p"] = S(r.p);
    out["dedekind_divides"] = r.dedekind_divides;
    out["index_lower"] = S(r.index_lower);
    out["p_regular"] = r.p_regular;
    out["index_exact"] = r.index_exact ? ordered_json(S(*r.index_exact)) : ordered_json(nullptr);
    ordered_json fj = ordered_json::array();
    for (const PhiReport& f : r.factors) {
        ordered_json e;
        e["phi"] = f.phi.str();
        e["multiplicity"] = S(f.multiplicity);
        e["phi_index"] = S(f.phi_index);
        e["regular"] = f.regular;
        fj.push_back(e);
    }
    out["factors"] = fj;
    ordered_json sj = ordered_json::array();
    for (const SplittingShape& s : r.shapes) {
        ordered_json e;
        e["e"] = S(s.e);
        e["f"] = S(s.f_res);
        sj.push_back(e);
    }
    out["shapes"] = sj;
    return out;
}

ordered_json polygon_json(const NewtonPolygon& np) {
    ordered_json out;
    out["f"] = np.f().str();
    out["phi"] = np.phi().str();
    out["p"] = S(np.p());
    ordered_json pts = ordered_json::array();
    for (size_t i = 0; i < np.ordinates().size(); ++i)
        pts.push_back(pair_json(static_cast<long>(i), np.ordinates()[i]));
    out["points"] = pts;
    out["vertices"] = vertices_json(np.vertices());
    ordered_json sides = ordered_json::array();
    for (size_t k = 0; k < np.sides().size(); ++k) {
        const Side& sd = np.sides()[k];
        ordered_json e;
        e["from"] = pair_json(sd.s, sd.us);
        e["to"] = pair_json(sd.end_x(), sd.end_y());
        e["slope"] = slope_str(sd);
        e["l"] = S(sd.l);
        e["h"] = S(sd.h);
        e["d"] = S(sd.d);
        ExtPoly res = np.residual(k);
        e["residual"] = res.str();
        e["squarefree"] = res.is_squarefree();
        sides.push_back(e);
    }
    out["sides"] = sides;
    out["regular"] = np.is_regular();
    out["polygon_index"] = S(np.polygon_index());
    out["phi_index"] = S(np.phi_index());
    return out;
}

ordered_json oracle_json(const OracleReport& r) {
    ordered_json out;
    out["p"] = S(r.p);
    out["index_valuation"] = S(r.index_valuation);
    ordered_json cj = ordered_json::array();
    for (const auto& [f, count] : r.census) {
        ordered_json e;
        e["f"] = S(f);
        e["count"] = S(count);
        cj.push_back(e);
    }
    out["census"] = cj;
    out["iterations"] = S(r.iterations);
    return out;
}

ordered_json analyze_json(const AnalyzeResult& R) {
    ordered_json out;
    out["n"] = S(R.n);
    out["m"] = S(R.m);
    out["status"] = verdict_str(R.status);
    out["witness"] = R.witness ? witness_json(*R.witness) : ordered_json(nullptr);
    out["certificate"] =
        R.certificate ? certificate_json(*R.certificate) : ordered_json(nullptr);
    ordered_json primes = ordered_json::array();
    for (const PrimeReport& pr : R.primes) {
        ordered_json e;
        e["p"] = S(pr.p);
        for (const IntclosCheck& c : R.closedness.checks) {
            if (c.p != pr.p) continue;
            ordered_json cc;
            cc["v"] = S(c.v);
            cc["ok"] = c.ok;
            e["closed_check"] = cc;
            break;
        }
        e["dedekind_divides"] = pr.ore.dedekind_divides;
        e["index_lower"] = S(pr.ore.index_lower);
        e["p_regular"] = pr.ore.p_regular;
        e["index_exact"] =
            pr.index_exact ? ordered_json(S(*pr.index_exact)) : ordered_json(nullptr);
        e["order2"] = pr.order2 ? order2_json(*pr.order2) : ordered_json(nullptr);
        primes.push_back(e);
    }
    out["primes"] = primes;
    return out;
}

std::string order2_text(const Order2Result& r) {
    std::ostringstream os;
    os << "order-2 polygon at p = " << S(r.p) << ": e1 = " << r.e1
       << ", phi2 = " << r.phi2.str() << ", floor H = " << r.H << "\n";
    os << "  points:";
    for (const auto& [i, mu] : r.mu_points) os << " (" << i << ", " << mu << ")";
    os << "\n";
    for (size_t k = 0; k < r.sides.size(); ++k) {
        const Side& sd = r.sides[k];
        os << "  side (" << sd.s << ", " << sd.us << ") -> (" << sd.end_x() << ", "
           << sd.end_y() << "), slope " << slope_str(sd) << ", residual "
           << r.residuals[k].str("y") << "\n";
    }
    os << "  ind2 = " << S(r.ind2)
       << (r.all_squarefree ? " (exact refinement)" : " (residual not squarefree)") << "\n";
    if (r.census) {
        os << "  census:";
        for (const Order2Prime& q : *r.census)
            os << " (e=" << q.e << ", f=" << q.f_res << ")";
        os << "\n";
    }
    return os.str();
}

std::string ore_text(const OreResult& r) {
    std::ostringstream os;
    os << "p = " << S(r.p) << ": dedekind "
       << (r.dedekind_divides ? "divides" : "does not divide") << " the index; nu_p(ind) "
       << (r.index_exact ? "= " + S(*r.index_exact) : ">= " + S(r.index_lower))
       << (r.p_regular ? " (p-regular)" : " (not p-regular)") << "\n";
    for (const PhiReport& f : r.factors) {
        os << "  phi = " << f.phi.str() << " (multiplicity " << f.multiplicity
           << "): phi-index " << S(f.phi_index)
           << (f.regular ? "" : ", residual not squarefree") << "\n";
    }
    if (r.p_regular && !r.shapes.empty()) {
        os << "  splitting:";
        for (const SplittingShape& s : r.shapes) os << " (e=" << s.e << ", f=" << s.f_res << ")";
        os << "\n";
    }
    return os.str();
}

std::string polygon_text(const NewtonPolygon& np) {
    std::ostringstream os;
    os << "phi-polygon of " << np.f().str() << " at p = " << S(np.p())
       << ", phi = " << np.phi().str() << "\n";
    os << "  points:";
    for (size_t i = 0; i < np.ordinates().size(); ++i)
        os << " (" << i << ", " << np.ordinates()[i].str() << ")";
    os << "\n  principal vertices:";
    for (const auto& [x, y] : np.vertices()) os << " (" << x << ", " << y << ")";
    os << "\n";
    for (size_t k = 0; k < np.sides().size(); ++k) {
        const Side& sd = np.sides()[k];
        ExtPoly res = np.residual(k);
        os << "  side (" << sd.s << ", " << sd.us << ") -> (" << sd.end_x() << ", "
           << sd.end_y() << "), slope " << slope_str(sd) << ", residual " << res.str()
           << (res.is_squarefree() ? "" : " (not squarefree)") << "\n";
    }
    os << "  polygon index " << S(np.polygon_index()) << ", phi-index " << S(np.phi_index())
       << (np.is_regular() ? ", regular" : ", not regular") << "\n";
    return os.str();
}

std::string oracle_text(const OracleReport& r) {
    std::ostringstream os;
    os << "oracle at p = " << S(r.p) << ": nu_p(ind) = " << r.index_valuation << " after "
       << r.iterations << " enlargement steps\n  census:";
    if (r.census.empty()) os << " (none)";
    for (const auto& [f, count] : r.census) os << " f=" << f << ": " << count;
    os << "\n";
    return os.str();
}

std::string analyze_text(const AnalyzeResult& R) {
    std::ostringstream os;
    os << IntPoly::pure(R.n, R.m).str() << ": " << verdict_str(R.status) << "\n";
    if (R.witness) {
        os << "  generator: theta = alpha^" << S(R.witness->i) << " / m^" << S(R.witness->j)
           << ", minimal polynomial " << R.witness->g.str() << "\n";
    }
    if (R.certificate) {
        const CommonIndexEvidence& ev = R.certificate->evidence;
        os << "  certificate: condition " << R.certificate->condition << " at p = " << S(ev.p)
           << " (" << source_str(R.certificate->source) << " census): P_" << ev.f_res << " = "
           << ev.P_f << " > N_" << ev.f_res << " = " << S(ev.N_f) << "\n";
    }
    os << "  integral closedness: " << (R.closedness.closed ? "yes" : "no") << "\n";
    for (const IntclosCheck& c : R.closedness.checks) {
        os << "    p = " << S(c.p) << ": nu_p(m^p - m) = " << c.v.str()
           << (c.ok ? " (ok)" : " (want 1)") << "\n";
    }
    if (!R.hits.empty()) {
        os << "  condition hits:\n";
        for (const ConditionHit& h : R.hits) {
            os << "    condition " << h.condition << " at p = " << S(h.p) << ": ";
            if (!h.census_available) {
                os << "no census computable, no claim made\n";
                continue;
            }
            os << "census {";
            for (size_t i = 0; i < h.counts.size(); ++i) {
                if (i) os << ", ";
                os << "f=" << h.counts[i].first << ": " << h.counts[i].second;
            }
            os << "} (" << source_str(*h.source) << ") -> "
               << (h.evidence ? "certified" : "refuted") << "\n";
        }
    }
    for (const PrimeReport& pr : R.primes) {
        os << "  " << ore_text(pr.ore);
        if (pr.order2) os << "  " << order2_text(*pr.order2);
        if (!pr.ore.index_exact && pr.index_exact)
            os << "  nu_" << S(pr.p) << "(ind) = " << S(*pr.index_exact)
               << " via the order-2 refinement\n";
    }
    return os.str();
}

}  // namespace purindex
