#include "eppe/cli.hpp"

#include "eppe/check.hpp"
#include "eppe/errors.hpp"
#include "eppe/harness.hpp"
#include "eppe/io.hpp"
#include "eppe/oracles.hpp"
#include "eppe/pipelines.hpp"
#include "eppe/quantifier_elim.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace eppe {

namespace {

struct RunConfig {
    std::string command;
    std::string input;
    std::string emit = "sexpr";
    std::string bound = "100000";
    std::size_t budget_bits = std::size_t{1} << 20;
    unsigned jobs = 1;
    std::string out;

    // compile
    bool collapse = false;
    bool eliminate = false;
    bool flatten = false;
    // pipeline
    std::string pipeline;
    bool sum_notation = false;
    bool literal = false;
    // verify
    std::string gadget;
    std::vector<std::string> ranges;
    bool json = false;
    bool list = false;
    // oracle
    std::string oracle;
    std::vector<std::string> oracle_args;
    unsigned k = 0, r = 0, max_m = 12;
    std::size_t cap = 1000;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidArgument("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidArgument("cannot write " + path.string());
    out << text;
}

EmitFormat format(const RunConfig& c) { return parse_emit_format(c.emit); }

Integer parse_integer(const std::string& s, const char* what)
{
    Integer v;
    if (s.empty() || v.set_str(s, 10) != 0 || v < 0)
        throw InvalidArgument(std::string(what) + " must be a natural number: " + s);
    return v;
}

// Result first, the ledger table after a blank line.
std::string with_ledger(const std::string& formula, const VarLedger& ledger)
{
    if (ledger.total() == 0)
        return formula + "\n";
    return formula + "\n\n" + ledger.to_tsv();
}

int cmd_compile(const RunConfig& c, std::ostream& out)
{
    Document doc = parse_document(read_file(c.input));
    validate(doc.formula, doc.params);
    if (c.collapse)
        doc.formula = collapse_pair_quantifiers(doc.formula);
    VarLedger ledger;
    if (c.eliminate || c.flatten) {
        BuqSplit split = split_buq(doc);
        EquationSystem sys = eliminate_buq(split.inst);
        if (c.flatten) {
            NameSupply ns;
            FlattenOptions fo;
            fo.carried = split.carried;
            fo.params = doc.params;
            FlattenResult flat = flatten(sys, ns, fo);
            doc = flat.document;
            ledger = flat.ledger;
        } else {
            std::ostringstream os;
            for (const auto& cond : sys.conditions)
                os << to_string(cond.kind) << "\t" << describe(sys, cond) << "\n";
            std::string text = os.str();
            if (!c.out.empty()) {
                write_file(c.out, text);
                write_file(c.out + ".ledger.tsv", sys.ledger.to_tsv());
            } else {
                out << text << "\n" << sys.ledger.to_tsv();
            }
            return kExitOk;
        }
    }
    std::string formula = emit(doc, format(c));
    if (!c.out.empty()) {
        write_file(c.out, formula + "\n");
        if (ledger.total())
            write_file(c.out + ".ledger.tsv", ledger.to_tsv());
    } else {
        out << with_ledger(formula, ledger);
    }
    return kExitOk;
}

struct Artifact {
    std::string file;
    std::string heading;
    std::string text;
};

void emit_artifacts(const RunConfig& c, const std::vector<Artifact>& parts, const std::string& summary,
                    std::ostream& out)
{
    if (!c.out.empty()) {
        std::filesystem::create_directories(c.out);
        for (const auto& p : parts)
            write_file(std::filesystem::path(c.out) / p.file, p.text);
        write_file(std::filesystem::path(c.out) / "summary.txt", summary);
        out << summary;
        return;
    }
    for (const auto& p : parts)
        out << "## " << p.heading << "\n" << p.text << (p.text.empty() || p.text.back() == '\n' ? "" : "\n") << "\n";
    out << "## summary\n" << summary;
}

const char* extension(EmitFormat f)
{
    switch (f) {
    case EmitFormat::Sexpr:
        return ".sexpr";
    case EmitFormat::Plain:
        return ".txt";
    case EmitFormat::Latex:
        return ".tex";
    }
    return ".txt";
}

std::string params_line(const std::vector<std::string>& params)
{
    std::string s;
    for (const auto& p : params)
        s += (s.empty() ? "" : " ") + p;
    return s;
}

int cmd_pipeline_ph2(const RunConfig& c, std::ostream& out)
{
    Ph2BuildOptions bo;
    bo.literal = c.literal;
    Ph2Artifacts art = build_ph2(bo);
    EmitFormat f = format(c);
    std::string ext = extension(f);
    std::vector<Artifact> parts;
    parts.push_back({"e3" + ext, "e3", emit(Document{art.params, art.e3}, f) + "\n"});
    parts.push_back({"e4" + ext, "e4", emit(Document{art.params, art.e4}, f) + "\n"});
    parts.push_back({"e6" + ext, "e6", emit(Document{art.params, art.e6}, f) + "\n"});
    std::ostringstream sys;
    for (std::size_t i = 0; i < art.system.conditions.size(); ++i)
        sys << i + 1 << "\t" << to_string(art.system.conditions[i].kind) << "\t"
            << describe(art.system, art.system.conditions[i]) << "\n";
    parts.push_back({"system.txt", "system", sys.str()});
    parts.push_back({"B.txt", "bound", "B = " + emit(art.B, EmitFormat::Plain) + "\nprinted B = " +
                                           emit(art.printed_B, EmitFormat::Plain) + "\n"});
    parts.push_back({"final.sexpr", "final (sexpr)", emit(art.final, EmitFormat::Sexpr) + "\n"});
    std::string latex = c.sum_notation ? ph2_latex(art) : emit(art.final, EmitFormat::Latex) + "\n";
    parts.push_back({"final.tex", "final (latex)", latex});
    parts.push_back({"ledger.tsv", "ledger", art.ledger.to_tsv()});

    FormulaStats st = stats(art.final.formula, art.final.params);
    std::ostringstream sum;
    sum << "parameters: " << params_line(art.final.params) << " (expected k M a b r)\n";
    sum << "conditions: " << art.system.conditions.size() << " (expected 27)\n";
    sum << "unknowns: " << art.ledger.total() << " (expected 138)\n";
    sum << "quantified: " << st.existential << " existential, " << st.universal << " universal\n";
    sum << "e4 shape: " << stats(art.e4, art.params).shape << "\n";
    sum << "e6 shape: " << stats(art.e6, art.params).shape << "\n";
    sum << "latex length: " << latex.size() << "\n";
    emit_artifacts(c, parts, sum.str(), out);
    return kExitOk;
}

int cmd_pipeline_goodstein(const RunConfig& c, std::ostream& out)
{
    GoodsteinArtifacts art = build_goodstein();
    EmitFormat f = format(c);
    std::string ext = extension(f);
    std::vector<Artifact> parts;
    const std::pair<const char*, const PrefixedGadget*> gadgets[] = {
        {"elem", &art.elem}, {"hp", &art.hp},       {"rb", &art.rb},
        {"level", &art.level}, {"exp_k", &art.exp_k}, {"bump", &art.bump}};
    for (const auto& [name, g] : gadgets)
        parts.push_back({std::string("gadget_") + name + ext, std::string("gadget ") + name,
                         emit(g->formula, f) + "\n"});
    parts.push_back({"final" + ext, "final", emit(art.final, f) + "\n"});
    parts.push_back({"final.sexpr", "final (sexpr)", emit(art.final, EmitFormat::Sexpr) + "\n"});
    parts.push_back({"final.tex", "final (latex)", emit(art.final, EmitFormat::Latex) + "\n"});
    parts.push_back({"staged" + ext, "staged", emit(Document{art.params, art.staged}, f) + "\n"});
    parts.push_back({"ledger.tsv", "ledger", art.ledger.to_tsv()});
    parts.push_back({"erratum.txt", "erratum", erratum_report(art)});

    FormulaStats st = stats(art.final.formula, art.final.params);
    std::ostringstream sum;
    sum << "parameters: " << params_line(art.final.params) << "\n";
    sum << "variables: " << art.ledger.total() << " (display total " << art.erratum.display_total << ")\n";
    sum << "quantified: " << st.existential << " existential, " << st.universal << " universal\n";
    sum << "shape: " << art.shape << "\n";
    std::size_t unbound = 0;
    for (const auto& v : free_vars(art.final.formula))
        unbound += std::find(art.final.params.begin(), art.final.params.end(), v) == art.final.params.end();
    sum << "unbound matrix symbols: " << unbound << "\n";
    if (art.ledger.total() != art.erratum.display_total)
        sum << "erratum: totals differ by "
            << static_cast<long>(art.ledger.total()) - static_cast<long>(art.erratum.display_total)
            << ", see erratum section\n";
    emit_artifacts(c, parts, sum.str(), out);
    return kExitOk;
}

HarnessOptions harness_options(const RunConfig& c)
{
    HarnessOptions o;
    o.search_bound = parse_integer(c.bound, "--bound");
    o.limits.max_bits = c.budget_bits;
    o.jobs = c.jobs;
    return o;
}

int cmd_verify(const RunConfig& c, std::ostream& out)
{
    if (c.list) {
        for (const auto& g : registered_gadgets()) {
            out << g.name << "\t" << g.description;
            for (const auto& r : g.default_ranges)
                out << "\t" << r;
            out << (g.expect_counterexamples ? "\texpects counterexamples" : "") << "\n";
        }
        return kExitOk;
    }
    if (c.gadget.empty())
        throw InvalidArgument("verify needs a gadget name (see --list)");
    std::vector<RangeSpec> ranges;
    for (const auto& r : c.ranges)
        ranges.push_back(parse_range(r));
    EquivalenceReport rep = equivalence_harness(c.gadget, ranges, harness_options(c));
    std::string text = c.json ? rep.to_json() : rep.to_text();
    if (!c.out.empty())
        write_file(c.out, text);
    else
        out << text;
    return rep.passed() ? kExitOk : kExitFailure;
}

unsigned small(const std::string& s, const char* what)
{
    Integer v = parse_integer(s, what);
    if (!v.fits_uint_p())
        throw InvalidArgument(std::string(what) + " is too large");
    return static_cast<unsigned>(v.get_ui());
}

std::string oracle_text(const RunConfig& c)
{
    const auto& a = c.oracle_args;
    auto need = [&](std::size_t n, const char* usage) {
        if (a.size() != n)
            throw InvalidArgument(std::string("usage: oracle ") + usage);
    };
    EvalLimits limits;
    limits.max_bits = c.budget_bits;
    std::ostringstream os;
    if (c.oracle == "goodstein") {
        need(2, "goodstein M BASE");
        GoodsteinRun run = goodstein_seq(parse_integer(a[0], "M"), parse_integer(a[1], "BASE"), c.cap, limits);
        for (std::size_t i = 0; i < run.values.size(); ++i)
            os << (i ? " " : "") << run.values[i];
        os << " (" << (run.terminated ? "terminated" : "cap reached") << ", " << run.steps() << " steps)\n";
    } else if (c.oracle == "binomial") {
        need(1, "binomial N");
        auto row = pascal_row(small(a[0], "N"));
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? " " : "") << row[i];
        os << "\n";
    } else if (c.oracle == "ph2-min-M") {
        need(0, "ph2-min-M --k K --r R [--max-m M]");
        long m = ph2_min_M(c.k, c.r, c.max_m);
        if (m < 0)
            os << "no M <= " << c.max_m << " for k=" << c.k << " r=" << c.r << "\n";
        else
            os << "least M: " << m << " (k=" << c.k << " r=" << c.r << ")\n";
    } else if (c.oracle == "ph2") {
        need(3, "ph2 K R M");
        unsigned k = small(a[0], "K"), r = small(a[1], "R"), m = small(a[2], "M");
        os << (ph2_check(k, r, m) ? "true" : "false") << "\n";
    } else if (c.oracle == "psi") {
        need(2, "psi A N");
        Integer A = parse_integer(a[0], "A");
        unsigned n = small(a[1], "N");
        os << "n\tchi\tpsi\n";
        for (unsigned i = 0; i <= n; ++i)
            os << i << "\t" << chi(A, i) << "\t" << psi(A, i) << "\n";
    } else {
        throw InvalidArgument("unknown oracle: " + c.oracle + " (goodstein, binomial, ph2, ph2-min-M, psi)");
    }
    return os.str();
}

int cmd_oracle(const RunConfig& c, std::ostream& out)
{
    std::string text = oracle_text(c);
    if (!c.out.empty())
        write_file(c.out, text);
    else
        out << text;
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"Exponential prefixed polynomial equation toolkit", "eppc"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.add_option("--bound", c.bound, "search bound for witness search")->capture_default_str();
    app.add_option("--budget-bits", c.budget_bits, "largest bit length of an intermediate value")
        ->check(CLI::PositiveNumber);
    app.add_option("--emit", c.emit, "output format")->check(CLI::IsMember({"sexpr", "plain", "latex"}));
    app.add_option("--out", c.out, "output path (a directory for pipeline)");
    app.add_option("--jobs", c.jobs, "worker threads for verify")->check(CLI::PositiveNumber);

    auto* compile = app.add_subcommand("compile", "parse a formula file and apply passes in order");
    compile->add_option("file", c.input, "formula file")->required();
    compile->add_flag("--collapse-pairs", c.collapse, "merge two bounded universal quantifiers");
    compile->add_flag("--eliminate-buq", c.eliminate, "replace the bounded universal by an equation system");
    compile->add_flag("--flatten", c.flatten, "one equation (implies --eliminate-buq)");

    auto* pipeline = app.add_subcommand("pipeline", "build a full representation");
    pipeline->add_option("name", c.pipeline, "ph2 or goodstein")
        ->required()
        ->check(CLI::IsMember({"ph2", "goodstein"}));
    pipeline->add_flag("--sum-notation", c.sum_notation, "fold the divides-binomial blocks into an indexed sum");
    pipeline->add_flag("--literal", c.literal, "printed forms verbatim (ph2)");

    auto* verify = app.add_subcommand("verify", "equivalence harness for one gadget");
    verify->add_option("gadget", c.gadget, "gadget name");
    verify->add_option("--range", c.ranges, "name=lo..hi, repeatable");
    verify->add_flag("--json", c.json, "JSON report");
    verify->add_flag("--list", c.list, "list registered gadgets");

    auto* oracle = app.add_subcommand("oracle", "reference computations");
    oracle->add_option("name", c.oracle, "goodstein, binomial, ph2, ph2-min-M, psi")->required();
    oracle->add_option("args", c.oracle_args, "arguments");
    oracle->add_option("--k", c.k, "k for ph2-min-M");
    oracle->add_option("--r", c.r, "r for ph2-min-M");
    oracle->add_option("--max-m", c.max_m, "largest M tried by ph2-min-M");
    oracle->add_option("--cap", c.cap, "step cap for goodstein");

    // CLI11 parses a reversed argument vector
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitFailure;
    }

    try {
        if (compile->parsed())
            return cmd_compile(c, out);
        if (pipeline->parsed())
            return c.pipeline == "ph2" ? cmd_pipeline_ph2(c, out) : cmd_pipeline_goodstein(c, out);
        if (verify->parsed())
            return cmd_verify(c, out);
        return cmd_oracle(c, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ShapeMismatch& e) {
        err << "shape mismatch: " << e.what() << "\n";
        return kExitShape;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

} // namespace eppe
