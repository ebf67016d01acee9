#include <atomic>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "purindex/report.hpp"

using namespace purindex;
using nlohmann::ordered_json;

namespace {

mpz_class parse_mpz(const std::string& text, const std::string& what) {
    mpz_class out;
    if (mpz_set_str(out.get_mpz_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument(what + ": not a decimal integer: " + text);
    return out;
}

// One input form per command: either --n/--m for x^n - m or --poly free-form.
struct PolyInput {
    IntPoly f;
    std::optional<std::pair<long, mpz_class>> pure;  // (n, m) when of pure shape
};

PolyInput resolve_input(long n, const std::string& m_str, const std::string& poly_str) {
    bool have_nm = (n != 0) || !m_str.empty();
    if (have_nm && !poly_str.empty())
        throw std::invalid_argument("give either --n/--m or --poly, not both");
    if (!poly_str.empty()) {
        IntPoly f = parse_poly(poly_str);
        PolyInput in{f, std::nullopt};
        long d = f.degree();
        if (d >= 2 && f.is_monic()) {
            bool pure_shape = true;
            for (long i = 1; i < d; ++i)
                if (f.coeff(i) != 0) pure_shape = false;
            if (pure_shape) in.pure = {d, mpz_class(-f.coeff(0))};
        }
        return in;
    }
    if (n == 0 || m_str.empty())
        throw std::invalid_argument("missing input: give --n and --m, or --poly");
    mpz_class m = parse_mpz(m_str, "m");
    return PolyInput{IntPoly::pure(n, m), std::make_pair(n, m)};
}

PureField field_of(const PolyInput& in) {
    if (!in.pure)
        throw std::invalid_argument("this command needs a pure polynomial x^n - m");
    return PureField(in.pure->first, in.pure->second);
}

// Cross-check one analysis against the oracle wherever its envelope allows.
// Returns the number of disagreements; prints one line per check.
int verify_against_oracle(const AnalyzeResult& R, std::ostream& os) {
    int bad = 0;
    if (R.n > 60) {
        os << "verify: degree " << R.n
           << " is outside the oracle envelope (deg <= 60); skipped\n";
        return 0;
    }
    for (const PrimeReport& pr : R.primes) {
        if (pr.p > 50) {
            os << "verify: p = " << pr.p.get_str()
               << " outside the oracle envelope (p <= 50); skipped\n";
            continue;
        }
        OracleReport rep = oracle_analyze(IntPoly::pure(R.n, R.m), pr.p);
        mpz_class lower = pr.ore.index_lower;
        if (pr.order2) lower += pr.order2->ind2;
        bool ok;
        if (pr.index_exact)
            ok = (*pr.index_exact == rep.index_valuation);
        else
            ok = (lower <= rep.index_valuation);
        os << "verify: p = " << pr.p.get_str() << ": oracle nu_p(ind) = " << rep.index_valuation
           << (pr.index_exact ? " vs exact " + pr.index_exact->get_str()
                              : " vs lower bound " + lower.get_str())
           << (ok ? " (agree)" : " (MISMATCH)") << "\n";
        if (!ok) ++bad;
        if (R.certificate && R.certificate->evidence.p == pr.p) {
            const CommonIndexEvidence& ev = R.certificate->evidence;
            long oracle_P = 0;
            for (const auto& [f, count] : rep.census)
                if (f == ev.f_res) oracle_P = count;
            bool cok = (oracle_P == ev.P_f) && (mpz_class(oracle_P) > ev.N_f);
            os << "verify: certificate census P_" << ev.f_res << " = " << ev.P_f
               << " vs oracle " << oracle_P << (cok ? " (agree)" : " (MISMATCH)") << "\n";
            if (!cok) ++bad;
        }
    }
    if (R.witness && R.status == Verdict::Monogenic) {
        // the generator's own polynomial must be p-maximal everywhere
        long n = R.witness->g.degree();
        for (const PrimePower& q : factorize(mpz_class(n) * R.witness->a)) {
            if (q.p > 50) {
                os << "verify: p = " << q.p.get_str() << " outside the oracle envelope; skipped\n";
                continue;
            }
            OracleReport rep = oracle_analyze(R.witness->g, q.p);
            bool ok = (rep.index_valuation == 0);
            os << "verify: witness " << R.witness->g.str() << " at p = " << q.p.get_str()
               << ": oracle nu_p(ind) = " << rep.index_valuation
               << (ok ? " (agree)" : " (MISMATCH)") << "\n";
            if (!ok) ++bad;
        }
    }
    return bad;
}

struct SweepItem {
    long n;
    mpz_class m;
};

std::string sweep_line(const SweepItem& it, bool json, bool check_oracle, int* bad) {
    PureField K(it.n, it.m);
    AnalyzeResult R = analyze(K);
    if (R.witness && R.certificate)
        throw std::logic_error("sweep: witness and certificate are mutually exclusive");
    std::string flags;
    if (check_oracle && it.n <= 60) {
        for (const PrimeReport& pr : R.primes) {
            if (pr.p > 50) continue;
            OracleReport rep = oracle_analyze(K.f(), pr.p);
            mpz_class lower = pr.ore.index_lower;
            if (pr.order2) lower += pr.order2->ind2;
            bool ok = pr.index_exact ? (*pr.index_exact == rep.index_valuation)
                                     : (lower <= rep.index_valuation);
            if (!ok) {
                flags += " ORACLE-MISMATCH(p=" + pr.p.get_str() + ")";
                ++*bad;
            }
        }
    }
    if (json) {
        ordered_json j;
        j["n"] = std::to_string(it.n);
        j["m"] = it.m.get_str();
        j["status"] = verdict_str(R.status);
        if (R.certificate) {
            j["condition"] = std::to_string(R.certificate->condition);
            j["p"] = R.certificate->evidence.p.get_str();
        }
        if (R.witness) j["g"] = R.witness->g.str();
        if (!flags.empty()) j["flags"] = flags;
        return j.dump();
    }
    std::string line = "n=" + std::to_string(it.n) + " m=" + it.m.get_str() + ": " +
                       verdict_str(R.status);
    if (R.certificate)
        line += " (condition " + std::to_string(R.certificate->condition) + " at p=" +
                R.certificate->evidence.p.get_str() + ")";
    if (R.witness) line += " (g = " + R.witness->g.str() + ")";
    return line + flags;
}

int run(int argc, char** argv) {
    CLI::App app{"purindex: monogeneity and index analysis for pure fields Q(m^(1/n))"};
    app.require_subcommand(1);

    std::string format = "text";
    long n = 0;
    std::string m_str, p_str, phi_str, poly_str, verify, check;

    auto add_input = [&](CLI::App* cmd, bool with_p) {
        cmd->add_option("--n", n, "degree of f = x^n - m");
        cmd->add_option("--m", m_str, "radicand of f = x^n - m");
        cmd->add_option("--poly", poly_str, "free-form monic polynomial text");
        if (with_p) cmd->add_option("--p", p_str, "prime")->required();
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto* an = app.add_subcommand("analyze", "decide monogeneity of Q(m^(1/n))");
    add_input(an, false);
    an->add_option("--verify", verify, "cross-check the report against an independent backend")
        ->check(CLI::IsMember({"oracle"}));

    auto* po = app.add_subcommand("polygon", "principal phi-Newton polygons at p");
    add_input(po, true);
    po->add_option("--phi", phi_str, "monic lift of an irreducible factor of f mod p");

    auto* de = app.add_subcommand("dedekind", "does p divide the index of Z[alpha]?");
    add_input(de, true);

    auto* ix = app.add_subcommand("index", "nu_p(ind f) data at one prime");
    add_input(ix, true);

    auto* orc = app.add_subcommand("oracle", "independent p-maximal-order computation");
    add_input(orc, true);

    auto* sw = app.add_subcommand("sweep", "analyze every irreducible x^n - m in a box");
    long nmin = 2, nmax = 6, jobs = 0;
    std::string mmin_str, mmax_str = "30";
    sw->add_option("--n-min", nmin, "smallest degree (default 2)");
    sw->add_option("--n-max", nmax, "largest degree (default 6)");
    sw->add_option("--m-min", mmin_str, "smallest m (default -(m-max))");
    sw->add_option("--m-max", mmax_str, "largest m (default 30)");
    sw->add_option("--check", check, "cross-check every item inside the oracle envelope")
        ->check(CLI::IsMember({"oracle"}));
    sw->add_option("--jobs", jobs, "worker threads (default: hardware)");
    sw->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    bool json = (format == "json");

    if (an->parsed()) {
        PureField K = field_of(resolve_input(n, m_str, poly_str));
        AnalyzeResult R = analyze(K);
        if (json)
            std::cout << analyze_json(R).dump(2) << "\n";
        else
            std::cout << analyze_text(R);
        if (verify == "oracle") {
            int bad = verify_against_oracle(R, std::cout);
            if (bad > 0) {
                std::cerr << "verification failed: " << bad << " disagreement(s)\n";
                return 3;
            }
        }
        return 0;
    }

    if (po->parsed()) {
        PolyInput in = resolve_input(n, m_str, poly_str);
        mpz_class p = parse_mpz(p_str, "p");
        if (in.pure) PureField(in.pure->first, in.pure->second);  // reject reducible input
        std::vector<IntPoly> lifts;
        if (!phi_str.empty()) {
            lifts.push_back(parse_poly(phi_str));
        } else {
            for (const auto& [fac, mult] : factor_mod_p(reduce_mod_p(in.f, p)))
                lifts.push_back(lift_canonical(fac));
        }
        ordered_json arr = ordered_json::array();
        for (const IntPoly& phi : lifts) {
            NewtonPolygon np(in.f, phi, p);
            if (json)
                arr.push_back(polygon_json(np));
            else
                std::cout << polygon_text(np);
        }
        if (json) std::cout << arr.dump(2) << "\n";
        return 0;
    }

    if (de->parsed()) {
        PolyInput in = resolve_input(n, m_str, poly_str);
        mpz_class p = parse_mpz(p_str, "p");
        bool divides = dedekind_divides_index(in.f, p);
        if (json) {
            ordered_json j;
            j["p"] = p.get_str();
            j["divides_index"] = divides;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "p = " << p.get_str() << (divides ? " divides" : " does not divide")
                      << " the index of Z[alpha] for " << in.f.str() << "\n";
        }
        return 0;
    }

    if (ix->parsed()) {
        PolyInput in = resolve_input(n, m_str, poly_str);
        mpz_class p = parse_mpz(p_str, "p");
        OreResult ore = ore_analyze(in.f, p);
        std::optional<Order2Result> o2;
        if (in.pure && order2_in_scope(in.pure->first, in.pure->second, p))
            o2 = order2_analyze(in.pure->first, in.pure->second, p);
        std::optional<mpz_class> exact = ore.index_exact;
        if (!exact && o2 && o2->all_squarefree) exact = ore.index_lower + o2->ind2;
        if (json) {
            ordered_json j = ore_json(ore);
            j["order2"] = o2 ? order2_json(*o2) : ordered_json(nullptr);
            j["index_exact"] = exact ? ordered_json(exact->get_str()) : ordered_json(nullptr);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << ore_text(ore);
            if (o2) std::cout << order2_text(*o2);
            if (exact && !ore.index_exact)
                std::cout << "nu_p(ind) = " << exact->get_str()
                          << " via the order-2 refinement\n";
        }
        return 0;
    }

    if (orc->parsed()) {
        PolyInput in = resolve_input(n, m_str, poly_str);
        mpz_class p = parse_mpz(p_str, "p");
        OracleReport rep = oracle_analyze(in.f, p);
        if (json)
            std::cout << oracle_json(rep).dump(2) << "\n";
        else
            std::cout << oracle_text(rep);
        return 0;
    }

    // sweep
    mpz_class mmax = parse_mpz(mmax_str, "m-max");
    mpz_class mmin = mmin_str.empty() ? mpz_class(-mmax) : parse_mpz(mmin_str, "m-min");
    if (nmin < 2) nmin = 2;
    std::vector<SweepItem> items;
    for (long nn = nmin; nn <= nmax; ++nn)
        for (mpz_class m = mmin; m <= mmax; ++m)
            if (m != 0 && m != 1 && is_irreducible_pure(nn, m)) items.push_back({nn, m});
    std::vector<std::string> lines(items.size());
    std::vector<int> bads(items.size(), 0);
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    bool check_oracle = (check == "oracle");
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1))
                lines[i] = sweep_line(items[i], json, check_oracle, &bads[i]);
        });
    }
    for (auto& th : pool) th.join();
    int bad = 0;
    for (size_t i = 0; i < items.size(); ++i) {
        std::cout << lines[i] << "\n";
        bad += bads[i];
    }
    if (check_oracle) {
        if (json)
            std::cout << "{\"fields\": \"" << items.size() << "\", \"mismatches\": \""
                      << bad << "\"}\n";
        else
            std::cout << bad << " mismatches across " << items.size() << " fields\n";
    }
    if (bad > 0) {
        std::cerr << "sweep: the oracle disagreed on " << bad << " field(s)\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const refusal_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
