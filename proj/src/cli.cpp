#include "kha/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

#include "kha/error.hpp"
#include "kha/io.hpp"

namespace kha::cli {

namespace {

using io::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string quiver, torus, theta, dim, lhs, rhs, out = "-";
    std::string window, framing, weights, lambda, src, tgt, cut;
    int gen_degree = 0;
    int r_max = 3;
    std::vector<int> candidates{1, -1, 2, -2};
};

std::string read_source(const std::string& where, std::istream& in) {
    if (where == "-") return std::string(std::istreambuf_iterator<char>(in), {});
    std::ifstream f(where, std::ios::binary);
    if (!f) throw Error("cannot read '" + where + "'");
    return std::string(std::istreambuf_iterator<char>(f), {});
}

// Flags documented as "JSON" accept either inline JSON or a path.
json read_json(const std::string& where, std::istream& in) {
    auto first = where.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (where[first] == '[' || where[first] == '{')) return io::parse_text(where);
    return io::parse_text(read_source(where, in));
}

Window parse_window(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("--window expects m:M");
    try {
        std::size_t a = 0, b = 0;
        int lo = std::stoi(s.substr(0, colon), &a);
        int hi = std::stoi(s.substr(colon + 1), &b);
        if (a != colon || b != s.size() - colon - 1) throw UsageError("--window expects m:M");
        if (lo > hi) throw UsageError("--window bounds are reversed");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw UsageError("--window expects integers m:M");
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string("missing required flag ") + flag);
}

io::Workspace load_workspace(const Options& o, std::istream& in) {
    require(o.quiver, "--quiver");
    io::Workspace ws = io::workspace_from_json(read_json(o.quiver, in));
    if (!o.torus.empty()) ws.torus = io::torus_from_json(ws.quiver, read_json(o.torus, in), "/");
    return ws;
}

ShuffleElement load_element(const ShuffleAlgebra& a, const std::string& where, std::istream& in) {
    return a.element(io::laurent_from_json(read_json(where, in), "", &a.quiver().vertices()));
}

json run_command(const std::string& cmd, const Options& o, std::istream& in) {
    if (cmd == "mul") {
        require(o.lhs, "--lhs");
        require(o.rhs, "--rhs");
        ShuffleAlgebra a = load_workspace(o, in).algebra();
        ShuffleElement f = load_element(a, o.lhs, in);
        ShuffleElement g = load_element(a, o.rhs, in);
        if (o.cut.empty()) return io::to_json(a.multiply(f, g).payload());
        auto edges = split_list(o.cut);
        CutBundleWeights cut = a.cut_bundle(edges, f.dim(), g.dim());
        return io::to_json(a.twisted_multiply(f, g, cut).payload());
    }
    if (cmd == "act") {
        require(o.lhs, "--lhs");
        require(o.rhs, "--rhs");
        ShuffleAlgebra a = load_workspace(o, in).algebra();
        ShuffleElement f = load_element(a, o.lhs, in);
        FramedModuleElement m = io::framed_from_json(a, read_json(o.rhs, in));
        return io::to_json(a.act(f, m));
    }
    if (cmd == "zeta") {
        require(o.src, "--src");
        require(o.tgt, "--tgt");
        return io::to_json(load_workspace(o, in).algebra().zeta(o.src, o.tgt));
    }
    if (cmd == "triple") {
        TripledQuiver t = tripled_quiver(load_workspace(o, in).quiver);
        io::Workspace out{t.quiver, t.potential, std::nullopt, {}};
        return io::to_json(out);
    }
    if (cmd == "double") return io::to_json(double_quiver(load_workspace(o, in).quiver));
    if (cmd == "frame") {
        require(o.framing, "--framing");
        io::Workspace ws = load_workspace(o, in);
        return io::to_json(framed_quiver(ws.quiver, io::dim_from_json(read_json(o.framing, in), "/framing")));
    }
    if (cmd == "jacobi") {
        io::Workspace ws = load_workspace(o, in);
        if (!ws.potential) throw Error("the quiver document has no potential");
        json rel = json::array();
        for (const auto& e : ws.quiver.edges())
            rel.push_back({{"edge", e.id}, {"derivative", io::to_json(cyclic_derivative(ws.quiver, *ws.potential, e.id))}});
        return {{"relations", rel}};
    }
    if (cmd == "check-assumption-a") {
        io::Workspace ws = load_workspace(o, in);
        Potential w = ws.potential.value_or(Potential());
        json out;
        auto sol = check_assumption_a(ws.quiver, w);
        out["assumption_a"] = sol.has_value();
        if (sol) {
            json weights = json::object();
            for (std::size_t e = 0; e < ws.quiver.num_edges(); ++e) weights[ws.quiver.edge(e).id] = (*sol)[e];
            out["weights"] = weights;
        } else {
            out["weights"] = nullptr;
        }
        if (ws.torus) out["torus_invariant"] = check_invariance(ws.quiver, w, *ws.torus);
        return out;
    }
    if (cmd == "euler") {
        require(o.weights, "--weights");
        return io::to_json(euler_class(io::weights_from_json(read_json(o.weights, in))));
    }
    if (cmd == "zerodiv-cert") {
        require(o.weights, "--weights");
        require(o.lambda, "--lambda");
        WeightList s = io::weights_from_json(read_json(o.weights, in));
        json l = read_json(o.lambda, in);
        Cocharacter lambda;
        if (!l.is_array()) throw SchemaError("/", "expected an array of integers");
        for (std::size_t k = 0; k < l.size(); ++k) {
            if (!l[k].is_number_integer()) throw SchemaError("/" + std::to_string(k), "expected an integer");
            lambda.pairing.push_back(l[k].get<int>());
        }
        return io::to_json(lowest_weight_certificate(s, lambda));
    }
    if (cmd == "strata") {
        require(o.theta, "--theta");
        require(o.dim, "--dim");
        io::Workspace ws = load_workspace(o, in);
        return io::to_json(hn_strata(ws.quiver, io::theta_from_json(read_json(o.theta, in), "/theta"),
                                     io::dim_from_json(read_json(o.dim, in), "/dim")));
    }
    if (cmd == "verify-generation") {
        require(o.theta, "--theta");
        require(o.dim, "--dim");
        require(o.window, "--window");
        Window window = parse_window(o.window);
        io::Workspace ws = load_workspace(o, in);
        return io::to_json(verify_generation(ws.algebra(), io::theta_from_json(read_json(o.theta, in), "/theta"),
                                             io::dim_from_json(read_json(o.dim, in), "/dim"), window,
                                             o.gen_degree));
    }
    if (cmd == "relation-search") {
        ShuffleAlgebra a = o.quiver.empty() ? jordan_algebra() : load_workspace(o, in).algebra();
        VarSpace qs(a.torus().rank(), {});
        if (qs.rank() != 1) throw Error("relation search requires a rank-1 torus");
        std::vector<LaurentPoly> cands;
        for (int k : o.candidates) cands.push_back(LaurentPoly::variable(qs, 0, k));
        return io::to_json(relation_search(a, o.r_max, cands));
    }
    throw UsageError("unknown subcommand '" + cmd + "'");
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact K-theoretic Hall algebra computations for quivers", "kha"};
    app.require_subcommand(1);
    Options o;

    auto add = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };
    auto quiver = [&](CLI::App* s) {
        s->add_option("--quiver", o.quiver, "Quiver document (path or - for stdin)");
        s->add_option("--torus", o.torus, "Torus weighting document overriding the quiver's");
    };
    auto output = [&](CLI::App* s) { s->add_option("--out", o.out, "Output path (default stdout)"); };

    CLI::App* s = add("mul", "Shuffle product of two elements");
    quiver(s);
    s->add_option("--lhs", o.lhs, "Left element");
    s->add_option("--rhs", o.rhs, "Right element");
    s->add_option("--cut", o.cut, "Comma-separated cut edges; enables the twisted product");
    output(s);
    s = add("act", "Action of an element on a framed module vector");
    quiver(s);
    s->add_option("--lhs", o.lhs, "Algebra element");
    s->add_option("--rhs", o.rhs, "Framed module vector");
    output(s);
    s = add("zeta", "Zeta kernel between two vertices");
    quiver(s);
    s->add_option("--src", o.src, "First vertex");
    s->add_option("--tgt", o.tgt, "Second vertex");
    output(s);
    const std::pair<const char*, const char*> constructions[] = {
        {"triple", "Tripled quiver with its canonical potential"},
        {"double", "Doubled quiver"},
        {"jacobi", "Cyclic derivatives of the workspace potential"},
        {"check-assumption-a", "Edge weights under which the potential satisfies Assumption A"},
    };
    for (const auto& [name, help] : constructions) {
        s = add(name, help);
        quiver(s);
        output(s);
    }
    s = add("frame", "Framed quiver");
    quiver(s);
    s->add_option("--framing", o.framing, "Framing vector (JSON or path)");
    output(s);
    s = add("euler", "Euler class of a weight list");
    s->add_option("--weights", o.weights, "Weight list document");
    output(s);
    s = add("zerodiv-cert", "Lowest-weight certificate of an Euler class");
    s->add_option("--weights", o.weights, "Weight list document");
    s->add_option("--lambda", o.lambda, "Cocharacter (JSON array or path)");
    output(s);
    s = add("strata", "Harder-Narasimhan strata");
    quiver(s);
    s->add_option("--theta", o.theta, "Stability (JSON or path)");
    s->add_option("--dim", o.dim, "Dimension vector (JSON or path)");
    output(s);
    s = add("verify-generation", "Type-A generation check");
    quiver(s);
    s->add_option("--theta", o.theta, "Stability (JSON or path)");
    s->add_option("--dim", o.dim, "Dimension vector (JSON or path)");
    s->add_option("--window", o.window, "Exponent window m:M");
    s->add_option("--gen-degree", o.gen_degree, "Generator degree bound")->check(CLI::NonNegativeNumber);
    output(s);
    s = add("relation-search", "Quantum loop relation constant search");
    quiver(s);
    s->add_option("--r-max", o.r_max, "Degree bound")->check(CLI::NonNegativeNumber);
    s->add_option("--candidates", o.candidates, "Candidate powers of q")->delimiter(',');
    output(s);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        std::string text = io::dump(run_command(cmd, o, in));
        if (o.out == "-") {
            out << text;
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f || !(f << text)) throw Error("cannot write '" + o.out + "'");
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace kha::cli
