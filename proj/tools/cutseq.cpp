#include "cutseq/cutseq.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

using namespace cutseq;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---- argument decoding -------------------------------------------------------

std::vector<int> parse_int_list(const std::string& s)
{
    std::vector<int> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw UsageError("not an integer: " + tok);
        }
    }
    return out;
}

// A literal word or the contents of a file holding one.
std::string word_text(const std::string& arg)
{
    std::ifstream f(arg);
    if (!f) return arg;
    std::stringstream ss;
    ss << f.rdbuf();
    std::string s = ss.str();
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

AnyWord read_word(const std::string& arg, int n)
{
    try {
        return parse_word(word_text(arg), n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// "--theta 0.9", "--theta 3*pi/8", "--theta pi/8" or "--cot 1+2*sqrt2".
ProjectiveDirection read_direction(const std::string& theta, const std::string& cot, int n)
{
    if (!cot.empty()) {
        Q2 mu;
        try {
            mu = Q2::parse(cot);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return ProjectiveDirection::from_cot(mu);
    }
    if (theta.empty()) throw UsageError("a direction is required: --theta or --cot");
    static const std::regex multiple(R"(\s*(-?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*)");
    std::smatch m;
    if (std::regex_match(theta, m, multiple)) {
        long k = m[1].str().empty() ? 1 : (m[1].str() == "-" ? -1 : std::stol(m[1].str()));
        long q = m[2].matched ? std::stol(m[2].str()) : 1;
        if (q <= 0 || k < 0 || k > q) throw UsageError("angle must lie in [0, pi]");
        if (scalar_traits<Q2>::supports(n)) {
            try {
                return ProjectiveDirection::exact(angle_dir<Q2>(k, q));
            } catch (const std::domain_error&) {
            }
        }
        return ProjectiveDirection::approx(kPi * k / q);
    }
    try {
        size_t used = 0;
        Real t = std::stold(theta, &used);
        if (used != theta.size()) throw UsageError("bad angle: " + theta);
        return ProjectiveDirection::approx(t);
    } catch (const std::logic_error&) {
        throw UsageError("bad angle: " + theta);
    }
}

json direction_json(const ProjectiveDirection& d)
{
    json j{{"theta", static_cast<double>(d.theta())}, {"exact", d.is_exact()}};
    if (d.is_exact()) {
        const auto& v = d.exact_dir();
        if (v.is_zero_angle())
            j["cot"] = "inf";
        else if (v.is_pi_angle())
            j["cot"] = "-inf";
        else
            j["cot"] = v.v.x.str();
    }
    return j;
}

template <class T>
json dir_json(const Dir<T>& d)
{
    json j{{"theta", static_cast<double>(d.theta())}};
    if constexpr (scalar_traits<T>::exact) {
        if (d.is_zero_angle())
            j["cot"] = "inf";
        else if (d.is_pi_angle())
            j["cot"] = "-inf";
        else
            j["cot"] = d.v.x.str();
    }
    return j;
}

std::string word_string(const AnyWord& w)
{
    return std::visit([](const auto& x) { return to_string(x); }, w);
}

std::vector<std::string> word_strings(const std::vector<PeriodicWord>& ws)
{
    std::vector<std::string> out;
    for (const auto& w : ws) out.push_back(to_string(w));
    return out;
}

// ---- manifest ------------------------------------------------------------------

std::string timestamp()
{
    std::time_t t;
    if (const char* e = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::stoll(e));
    else
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json manifest(const CLI::App& sub, uint64_t seed)
{
    json flags = json::object();
    for (const CLI::Option* o : sub.get_options()) {
        if (o->get_name() == "--help" || o->count() == 0) continue;
        std::string key = o->get_name();
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        auto r = o->results();
        if (o->get_expected_min() == 0)
            flags[key] = true;
        else
            flags[key] = r.size() == 1 ? json(r.front()) : json(r);
    }
    return {{"command", sub.get_name()}, {"flags", flags}, {"seed", seed}, {"version", kVersion}, {"timestamp", timestamp()}};
}

void emit(const std::string& schema, json body, const CLI::App& sub, uint64_t seed)
{
    json out{{"schema", schema}};
    for (auto& [k, v] : body.items()) out[k] = v;
    out["manifest"] = manifest(sub, seed);
    std::cout << out.dump(2) << "\n";
}

// ---- tracing -------------------------------------------------------------------

struct TraceArgs {
    int n = 4;
    std::string theta, cot, start;
    size_t crossings = 100;
    bool random_start = false;
    double epsilon = 1e-9;
};

template <class T>
Vec2<T> start_point(const TraceArgs& a, const Polygon<T>& poly, std::mt19937_64& rng)
{
    if (a.random_start) return random_interior_point(poly, rng);
    std::string s = a.start.empty() ? "0,1/100" : a.start;
    auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("--start expects x,y");
    try {
        if constexpr (scalar_traits<T>::exact) {
            return {Q2::parse(s.substr(0, comma)), Q2::parse(s.substr(comma + 1))};
        } else {
            auto val = [](const std::string& t) { return Q2::parse(t).to_ld(); };
            return {val(s.substr(0, comma)), val(s.substr(comma + 1))};
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

struct Traced {
    FiniteWord word;
    std::vector<Crossing<Real>> log;
    Vec2<Real> start;
    bool exact;
};

Traced run_trace(const TraceArgs& a, uint64_t seed, bool keep_log)
{
    ProjectiveDirection d = read_direction(a.theta, a.cot, a.n);
    std::mt19937_64 rng(seed);
    TraceConfig cfg{static_cast<Real>(a.epsilon), a.crossings, keep_log};
    if (d.is_exact() && scalar_traits<Q2>::supports(a.n)) {
        auto poly = build_polygon<Q2>(a.n);
        Vec2<Q2> st = start_point(a, poly, rng);
        auto r = trace(poly, st, d.exact_dir().v, cfg);
        Traced t{r.word, {}, to_real(st), true};
        for (const auto& c : r.log) t.log.push_back({c.letter, to_real(c.point), c.side, c.s.to_ld()});
        return t;
    }
    auto poly = build_polygon<Real>(a.n);
    Vec2<Real> st = start_point(a, poly, rng);
    auto dir = d.real_dir();
    auto r = trace(poly, st, dir.v, cfg);
    return {r.word, r.log, st, false};
}

void add_trace_options(CLI::App* s, TraceArgs& a)
{
    s->add_option("--n", a.n, "half the number of sides")->check(CLI::Range(2, 64));
    s->add_option("--theta", a.theta, "angle: radians or k*pi/m");
    s->add_option("--cot", a.cot, "exact inverse slope p/q+r/s*sqrt2");
    s->add_option("--crossings", a.crossings, "number of side crossings");
    s->add_option("--start", a.start, "start point x,y (rationals or Q(sqrt2) literals)");
    s->add_flag("--random-start", a.random_start, "seeded random interior start");
    s->add_option("--epsilon", a.epsilon, "vertex exclusion in floating mode");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cutting sequences on regular 2n-gons"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    uint64_t seed = 1;
    app.add_option("--seed", seed, "PRNG seed")->capture_default_str();

    TraceArgs ta;
    auto* trace_cmd = app.add_subcommand("trace", "cutting sequence of a trajectory");
    add_trace_options(trace_cmd, ta);
    bool with_log = false;
    trace_cmd->add_flag("--log", with_log, "include crossing points");

    TraceArgs pa;
    auto* plot_cmd = app.add_subcommand("plot", "SVG picture of a trajectory");
    add_trace_options(plot_cmd, pa);

    TraceArgs ca;
    size_t max_len = 20;
    auto* complexity_cmd = app.add_subcommand("complexity", "factor counts of a traced word");
    add_trace_options(complexity_cmd, ca);
    complexity_cmd->add_option("--max-length", max_len, "largest factor length");

    int n = 4;
    std::string word;
    auto add_word = [&](CLI::App* s, bool required) {
        s->add_option("--n", n, "half the number of sides")->check(CLI::Range(2, 64));
        auto* o = s->add_option("--word", word, "word, per:<period> for periodic words, or a file");
        if (required) o->required();
    };

    auto* derive_cmd = app.add_subcommand("derive", "derived word");
    add_word(derive_cmd, true);

    int index = -1;
    auto* diagrams_cmd = app.add_subcommand("diagrams", "transition diagrams or admissibility of a word");
    add_word(diagrams_cmd, false);
    diagrams_cmd->add_option("--index", index, "only this diagram");

    int depth = 5;
    auto* recognize_cmd = app.add_subcommand("recognize", "direction cylinder of a word window");
    add_word(recognize_cmd, true);
    recognize_cmd->add_option("--depth", depth, "number of diagrams")->check(CLI::PositiveNumber);

    std::string theta, cot, expansion;
    int tail = 0;
    auto* expand_cmd = app.add_subcommand("expand-direction", "itinerary of a direction or direction of an expansion");
    expand_cmd->add_option("--n", n)->check(CLI::Range(2, 64));
    expand_cmd->add_option("--theta", theta, "angle: radians or k*pi/m");
    expand_cmd->add_option("--cot", cot, "exact inverse slope");
    expand_cmd->add_option("--expansion", expansion, "comma separated sectors s0,s1,...");
    expand_cmd->add_option("--tail", tail, "constant tail (1 or 2n-1) after the expansion");
    expand_cmd->add_option("--depth", depth, "itinerary length")->check(CLI::PositiveNumber);

    int k = 1, target = 0;
    auto* generate_cmd = app.add_subcommand("generate", "generation operator g(k -> i)");
    add_word(generate_cmd, true);
    generate_cmd->add_option("--k", k, "source diagram")->required();
    generate_cmd->add_option("--i", target, "target diagram");

    auto* seeds_cmd = app.add_subcommand("seeds", "periodic seeds P_k");
    seeds_cmd->add_option("--n", n)->check(CLI::Range(3, 64));
    seeds_cmd->add_option("--k", k, "diagram")->required();

    std::string prefix, seed_kind = "periodic", seed_words;
    auto* families_cmd = app.add_subcommand("families", "families P(s_0, ..., s_k)");
    families_cmd->add_option("--n", n)->check(CLI::Range(3, 64));
    families_cmd->add_option("--prefix", prefix, "comma separated sectors")->required();
    families_cmd->add_option("--seeds", seed_kind, "periodic, or words for --seed-words")
        ->check(CLI::IsMember({"periodic", "words"}));
    families_cmd->add_option("--seed-words", seed_words, "comma separated seed words");

    size_t length = 10;
    int fdepth = -1;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "factors from families along an itinerary");
    enumerate_cmd->add_option("--n", n)->check(CLI::Range(3, 64));
    enumerate_cmd->add_option("--theta", theta);
    enumerate_cmd->add_option("--cot", cot);
    enumerate_cmd->add_option("--prefix", prefix, "itinerary prefix instead of a direction");
    enumerate_cmd->add_option("--length", length, "factor length")->check(CLI::PositiveNumber);
    enumerate_cmd->add_option("--depth", fdepth, "family depth (default: until stable)");

    int ci = -1, cj = -1;
    auto* coherence_cmd = app.add_subcommand("check-coherence", "coherence verdicts");
    add_word(coherence_cmd, true);
    coherence_cmd->add_option("--depth", depth, "renormalization depth")->check(CLI::PositiveNumber);
    coherence_cmd->add_option("--i", ci, "explicit pair (i, j)");
    coherence_cmd->add_option("--j", cj);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*trace_cmd) {
            Traced t = run_trace(ta, seed, with_log);
            json body{{"n", ta.n}, {"exact", t.exact}, {"start", {static_cast<double>(t.start.x), static_cast<double>(t.start.y)}},
                      {"word", to_string(t.word)}};
            if (with_log) {
                json log = json::array();
                for (const auto& c : t.log)
                    log.push_back({{"letter", letter_name(c.letter, ta.n)}, {"side", c.side}, {"s", static_cast<double>(c.s)},
                                   {"point", {static_cast<double>(c.point.x), static_cast<double>(c.point.y)}}});
                body["log"] = log;
            }
            emit("cutseq.trace/1", body, *trace_cmd, seed);
        } else if (*plot_cmd) {
            Traced t = run_trace(pa, seed, true);
            std::cout << plot_svg(build_polygon<Real>(pa.n), t.start, t.log);
        } else if (*complexity_cmd) {
            Traced t = run_trace(ca, seed, false);
            auto counts = factor_counts(t.word.letters, ca.n, max_len);
            json rows = json::array();
            bool all = true;
            for (size_t l = 1; l <= max_len; ++l) {
                size_t expect = static_cast<size_t>(ca.n - 1) * l + 1;
                all = all && counts[l] == expect;
                rows.push_back({{"length", l}, {"count", counts[l]}, {"expected", expect}});
            }
            emit("cutseq.complexity/1", {{"n", ca.n}, {"counts", rows}, {"matches", all}}, *complexity_cmd, seed);
        } else if (*derive_cmd) {
            AnyWord w = read_word(word, n);
            std::string out = std::visit(
                [](const auto& x) {
                    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, PeriodicWord>)
                        return to_string(derive(x));
                    else
                        return to_string(derive(WordWindow{x}).word);
                },
                w);
            emit("cutseq.derive/1", {{"word", word_string(w)}, {"derived", out}}, *derive_cmd, seed);
        } else if (*diagrams_cmd) {
            json body{{"n", n}};
            if (!word.empty()) {
                AnyWord w = read_word(word, n);
                body["word"] = word_string(w);
                body["admissible"] = std::visit([](const auto& x) { return admissible_diagrams(x); }, w);
            } else {
                json ds = json::array();
                for (int i = 0; i < 2 * n; ++i) {
                    if (index >= 0 && i != index) continue;
                    json edges = json::array();
                    for (auto [a, b] : build_diagram(i, n).edges()) edges.push_back(letter_name(a, n) + (n > 4 ? " " : "") + letter_name(b, n));
                    ds.push_back({{"index", i}, {"permutation", induced_permutation(i, n).cycles()}, {"edges", edges}});
                }
                if (index >= 2 * n) throw IndexOutOfRange("diagram index");
                body["diagrams"] = ds;
            }
            emit("cutseq.diagrams/1", body, *diagrams_cmd, seed);
        } else if (*recognize_cmd) {
            AnyWord w = read_word(word, n);
            if (std::holds_alternative<PeriodicWord>(w))
                throw UsageError("recognize needs a finite window; use expand-direction for periodic words");
            WordWindow win{std::get<FiniteWord>(w)};
            auto tr = renormalize(win, depth);
            json body{{"diagrams", tr.diagrams}, {"halt", to_string(tr.halt)}};
            if (tr.halt != Halt::None) {
                if (!tr.candidates.empty()) body["candidates"] = tr.candidates;
                std::cerr << "recognition stopped: " << to_string(tr.halt) << "\n";
                emit("cutseq.recognize/1", body, *recognize_cmd, seed);
                return 2;
            }
            if (scalar_traits<Q2>::supports(n)) {
                auto iv = sector_interval<Q2>(tr.diagrams, n);
                body["interval_lo"] = dir_json(iv.lo);
                body["interval_hi"] = dir_json(iv.hi);
            } else {
                auto iv = sector_interval<Real>(tr.diagrams, n);
                body["interval_lo"] = dir_json(iv.lo);
                body["interval_hi"] = dir_json(iv.hi);
            }
            emit("cutseq.recognize/1", body, *recognize_cmd, seed);
        } else if (*expand_cmd) {
            json body{{"n", n}};
            if (!expansion.empty()) {
                Expansion e{parse_int_list(expansion), tail ? std::optional<int>(tail) : std::nullopt};
                body["expansion"] = e.entries;
                if (e.tail) body["tail"] = *e.tail;
                body["sector_sequence"] = e.is_sector_sequence(n);
                if (scalar_traits<Q2>::supports(n)) {
                    auto iv = direction_from_expansion<Q2>(e, depth, n);
                    body["lo"] = dir_json(iv.lo);
                    body["hi"] = dir_json(iv.hi);
                } else {
                    auto iv = direction_from_expansion<Real>(e, depth, n);
                    body["lo"] = dir_json(iv.lo);
                    body["hi"] = dir_json(iv.hi);
                }
            } else {
                ProjectiveDirection d = read_direction(theta, cot, n);
                body["direction"] = direction_json(d);
                auto rep = is_terminating(d, n, depth);
                body["itinerary"] = itinerary(d, n, depth);
                body["terminating"] = rep.terminating;
                body["proof"] = rep.proof;
                if (rep.terminating) {
                    body["tail"] = rep.tail;
                    body["tail_starts"] = rep.depth;
                }
            }
            emit("cutseq.expand/1", body, *expand_cmd, seed);
        } else if (*generate_cmd) {
            AnyWord w = read_word(word, n);
            std::string out = std::visit([&](const auto& x) { return to_string(generate(k, target, x)); }, w);
            emit("cutseq.generate/1", {{"k", k}, {"i", target}, {"word", word_string(w)}, {"generated", out}}, *generate_cmd, seed);
        } else if (*seeds_cmd) {
            emit("cutseq.seeds/1", {{"n", n}, {"k", k}, {"seeds", word_strings(periodic_seeds(k, n))}}, *seeds_cmd, seed);
        } else if (*families_cmd) {
            auto pre = parse_int_list(prefix);
            std::vector<std::string> out;
            if (seed_kind == "periodic") {
                out = word_strings(periodic_family(pre, n));
            } else {
                std::vector<PeriodicWord> per;
                std::vector<FiniteWord> fin;
                std::stringstream in(seed_words);
                std::string tok;
                while (std::getline(in, tok, ',')) {
                    AnyWord w = read_word(tok, n);
                    if (auto* p = std::get_if<PeriodicWord>(&w))
                        per.push_back(*p);
                    else
                        fin.push_back(std::get<FiniteWord>(w));
                }
                if (per.empty() && fin.empty()) throw UsageError("--seeds words needs --seed-words");
                if (!per.empty()) out = word_strings(build_family(pre, per, n));
                for (const auto& f : build_family(pre, fin, n)) out.push_back(to_string(f));
            }
            emit("cutseq.families/1", {{"n", n}, {"prefix", pre}, {"words", out}}, *families_cmd, seed);
        } else if (*enumerate_cmd) {
            std::optional<int> d;
            if (fdepth >= 0) d.emplace(fdepth);
            FactorEnumeration fe;
            json body{{"n", n}, {"length", length}};
            if (!prefix.empty()) {
                fe = enumerate_factors(parse_int_list(prefix), n, length, d);
            } else {
                ProjectiveDirection dir = read_direction(theta, cot, n);
                body["direction"] = direction_json(dir);
                fe = enumerate_factors(dir, n, length, d);
            }
            std::vector<std::string> fs;
            for (const auto& f : fe.factors) fs.push_back(format_letters(f, n));
            body["depth"] = fe.depth;
            body["itinerary"] = fe.itinerary;
            body["count"] = fs.size();
            body["factors"] = fs;
            emit("cutseq.enumerate/1", body, *enumerate_cmd, seed);
        } else if (*coherence_cmd) {
            AnyWord w = read_word(word, n);
            json body{{"word", word_string(w)}};
            auto verdict = [](const CoherenceVerdict& v, int i, int j) {
                json r{{"i", i}, {"j", j}, {"accepted", v.accepted}, {"groups", v.groups}};
                r["reason"] = v.reason ? json(to_string(*v.reason)) : json(nullptr);
                return r;
            };
            auto run = [&](const auto& x) {
                if (ci >= 0 || cj >= 0) {
                    if (ci < 0 || cj < 0) throw UsageError("--i and --j go together");
                    body["verdicts"] = json::array({verdict(check_coherent(x, ci, cj), ci, cj)});
                    return;
                }
                auto tr = renormalize(x, depth + 1);
                json vs = json::array();
                for (size_t m = 0; m + 1 < tr.diagrams.size(); ++m)
                    vs.push_back(verdict(check_coherent(tr.words[m], tr.diagrams[m], tr.diagrams[m + 1]), tr.diagrams[m],
                                         tr.diagrams[m + 1]));
                body["diagrams"] = tr.diagrams;
                body["halt"] = to_string(tr.halt);
                body["verdicts"] = vs;
            };
            if (auto* p = std::get_if<PeriodicWord>(&w))
                run(*p);
            else
                run(WordWindow{std::get<FiniteWord>(w)});
            emit("cutseq.coherence/1", body, *coherence_cmd, seed);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
