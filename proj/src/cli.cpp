#include "ballspace/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ballspace/hierarchy.hpp"
#include "ballspace/io.hpp"
#include "ballspace/miner.hpp"

namespace ballspace {

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Subset parse_label_set(const std::string& text, const GroundSet& ground) {
    Subset s;
    std::istringstream stream(text);
    std::string token;
    while (stream >> token) {
        auto idx = ground.index_of(token);
        if (!idx) throw input_error("unknown label '" + token + "'");
        s = s | Subset::singleton(*idx);
    }
    return s;
}

std::vector<Rational> parse_radii_list(const std::string& text) {
    std::vector<Rational> out;
    std::string piece;
    std::istringstream stream(text);
    while (std::getline(stream, piece, ',')) out.push_back(parse_rational(piece));
    return out;
}

struct ClassifyArgs {
    std::string file;
    bool exhaustive = false;
    bool witness = false;
    bool json = false;
};

int run_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
    BallSpace space = parse_ballspace(read_input(a.file));
    PropertyReport report = classify(space, ClassifyMode::Fast);
    if (a.exhaustive) {
        PropertyReport oracle = classify(space, ClassifyMode::Exhaustive);
        if (!(oracle == report)) {
            err << "soundness alarm: fast and exhaustive classification disagree\n";
            return 3;
        }
        out << "exhaustive oracle agrees\n";
    }
    out << (a.json ? report_to_json(report) : report_to_text(report));
    if (a.witness) {
        for (int level = 1; level <= 5; ++level) {
            for (SystemKind kind :
                 {SystemKind::Nest, SystemKind::Directed, SystemKind::Centered}) {
                if (report.at(level, kind)) continue;
                try {
                    PropertyCheck check = check_property(space, level, kind);
                    if (check.witness) {
                        out << "witness S" << level
                            << (kind == SystemKind::Directed  ? "d"
                                : kind == SystemKind::Centered ? "c"
                                                               : "")
                            << ": system=" << family_to_string(space.ground(), check.witness->system)
                            << " region=" << subset_to_string(space.ground(), check.witness->region)
                            << " reason=" << to_string(check.witness->reason) << "\n";
                    }
                } catch (const resource_error& e) {
                    out << "witness S" << level << ": skipped (" << e.what() << ")\n";
                }
            }
        }
    }
    auto violations = validate_report(report);
    if (!violations.empty()) {
        for (const auto& v : violations) err << "soundness alarm: " << v << "\n";
        return 3;
    }
    return 0;
}

struct ConstructArgs {
    std::string op;
    std::vector<std::string> files;
    std::string region;
    std::string set;
    bool json = false;
};

int run_construct(const ConstructArgs& a, std::ostream& out, std::ostream&) {
    auto need_one = [&]() {
        if (a.files.size() != 1) throw input_error("operation '" + a.op + "' takes one document");
        return parse_ballspace(read_input(a.files[0]));
    };
    auto emit = [&](const BallSpace& s) {
        out << (a.json ? emit_ballspace_json(s) : emit_ballspace(s));
    };
    if (a.op == "singletons") {
        emit(with_singletons(need_one()));
    } else if (a.op == "top") {
        emit(with_top(need_one()));
    } else if (a.op == "union") {
        if (a.files.size() != 2) throw input_error("operation 'union' takes two documents");
        emit(family_union(parse_ballspace(read_input(a.files[0])),
                          parse_ballspace(read_input(a.files[1]))));
    } else if (a.op == "close-fun") {
        emit(close(need_one(), ClosureOp::FiniteUnions));
    } else if (a.op == "close-fint") {
        emit(close(need_one(), ClosureOp::FiniteIntersections));
    } else if (a.op == "close-int") {
        emit(close(need_one(), ClosureOp::Intersections));
    } else if (a.op == "close-nint") {
        emit(close(need_one(), ClosureOp::NestIntersections));
    } else if (a.op == "close-full") {
        emit(close(need_one(), ClosureOp::FullClosure));
    } else if (a.op == "topology") {
        Topology t = associated_topology(need_one());
        out << (a.json ? emit_topology_json(t) : emit_topology(t));
    } else if (a.op == "subspace") {
        BallSpace space = need_one();
        if (a.region.empty()) throw input_error("subspace needs --region");
        emit(subspace(space, parse_label_set(a.region, space.ground())));
    } else if (a.op == "scl") {
        BallSpace space = need_one();
        if (a.set.empty()) throw input_error("scl needs --set");
        Subset result = spherical_closure(space, parse_label_set(a.set, space.ground()));
        if (a.json) {
            nlohmann::json doc;
            auto arr = nlohmann::json::array();
            for_each_element(result, [&](int i) { arr.push_back(space.ground().label(i)); });
            doc["scl"] = arr;
            out << doc.dump(2) << "\n";
        } else {
            bool first = true;
            for_each_element(result, [&](int i) {
                if (!first) out << ' ';
                out << space.ground().label(i);
                first = false;
            });
            out << "\n";
        }
    } else {
        throw input_error("unknown construct operation '" + a.op + "'");
    }
    return 0;
}

struct ProductArgs {
    std::string mode;
    std::vector<std::string> files;
    bool json = false;
};

int run_product(const ProductArgs& a, std::ostream& out, std::ostream&) {
    ProductMode mode;
    if (a.mode == "pr")
        mode = ProductMode::Pr;
    else if (a.mode == "tpr")
        mode = ProductMode::Tpr;
    else if (a.mode == "bpr")
        mode = ProductMode::Bpr;
    else
        throw input_error("product mode must be pr, tpr or bpr");
    std::vector<BallSpace> factors;
    for (const auto& file : a.files) factors.push_back(parse_ballspace(read_input(file)));
    BallSpace result = product(factors, mode);
    out << (a.json ? emit_ballspace_json(result) : emit_ballspace(result));
    return 0;
}

struct InstanceArgs {
    std::string kind;
    std::string file;
    std::string variant;
    std::string radii;
    bool assignment = false;
    bool json = false;
};

void print_assignment(const BxSpace& bx, std::ostream& out) {
    for (size_t x = 0; x < bx.assignment.b.size(); ++x) {
        out << "bx " << bx.space.ground().label(static_cast<int>(x)) << ":";
        for_each_element(bx.assignment.b[x],
                         [&](int i) { out << ' ' << bx.space.ground().label(i); });
        out << "\n";
    }
}

int run_instance(const InstanceArgs& a, std::ostream& out, std::ostream&) {
    std::string text = read_input(a.file);
    auto emit = [&](const BallSpace& s) {
        out << (a.json ? emit_ballspace_json(s) : emit_ballspace(s));
    };
    if (a.kind == "metric") {
        MetricDocument doc = parse_metric(text);
        std::optional<std::vector<Rational>> radii = doc.radii;
        if (!a.radii.empty()) {
            if (a.radii == "all")
                radii = std::nullopt;
            else
                radii = parse_radii_list(a.radii);
        }
        emit(metric_balls(doc.metric, radii));
    } else if (a.kind == "ultrametric") {
        UltrametricInstance u = parse_ultrametric(text);
        UltrametricVariant variant = UltrametricVariant::Closed;
        if (a.variant == "precise")
            variant = UltrametricVariant::Precise;
        else if (a.variant == "full")
            variant = UltrametricVariant::Full;
        else if (!a.variant.empty() && a.variant != "closed")
            throw input_error("ultrametric variant must be closed, precise or full");
        emit(ultrametric_balls(u, variant));
    } else if (a.kind == "poset") {
        PosetInstance p = parse_poset(text);
        PosetVariant variant = PosetVariant::PrincipalFinal;
        if (a.variant == "segments")
            variant = PosetVariant::Segments;
        else if (!a.variant.empty() && a.variant != "principal")
            throw input_error("poset variant must be principal or segments");
        emit(poset_balls(p, variant));
    } else if (a.kind == "topology") {
        emit(topology_balls(parse_topology(text)));
    } else if (a.kind == "ck") {
        BxSpace bx = caristi_kirk_balls(parse_ck(text));
        if (a.assignment)
            print_assignment(bx, out);
        else
            emit(bx.space);
    } else if (a.kind == "ot") {
        BxSpace bx = oettli_thera_balls(parse_ot(text));
        if (a.assignment)
            print_assignment(bx, out);
        else
            emit(bx.space);
    } else {
        throw input_error("instance kind must be metric, ultrametric, poset, topology, ck or ot");
    }
    return 0;
}

struct FixpointArgs {
    std::string file;
    std::string kind = "ballspace";
    std::string map;
    std::string theorem;
    std::string bx;
    std::string start;
    bool descend = false;
    bool kt_suite = false;
    bool check_bx = false;
};

int run_fixpoint(const FixpointArgs& a, std::ostream& out, std::ostream& err) {
    std::string text = read_input(a.file);
    TheoremBundle bundle;
    std::optional<BxSpace> derived;
    if (a.kind == "ballspace") {
        bundle.space = parse_ballspace(text);
    } else if (a.kind == "poset") {
        bundle.poset = parse_poset(text);
    } else if (a.kind == "ck") {
        bundle.ck = parse_ck(text);
        derived = caristi_kirk_balls(*bundle.ck);
        bundle.space = derived->space;
        bundle.bx = derived->assignment;
    } else if (a.kind == "ot") {
        bundle.ot = parse_ot(text);
        derived = oettli_thera_balls(*bundle.ot);
        bundle.space = derived->space;
        bundle.bx = derived->assignment;
    } else {
        throw input_error("fixpoint kind must be ballspace, poset, ck or ot");
    }
    // The map acts on the poset, the metric points, or the (possibly
    // restricted) ball space ground. For an ot instance only the
    // oettlithera theorem itself works on the full point set.
    const GroundSet* ground = nullptr;
    if (bundle.poset) {
        ground = &bundle.poset->elements();
    } else if (a.kind == "ck") {
        ground = &bundle.ck->metric.points();
    } else if (a.kind == "ot") {
        ground = a.theorem == "oettlithera" ? &bundle.ot->metric.points()
                                            : &bundle.space->ground();
    } else {
        ground = &bundle.space->ground();
    }
    if (a.map.empty()) throw input_error("fixpoint needs --map");
    bundle.f = parse_selfmap(a.map, *ground);
    if (!a.bx.empty()) {
        if (!bundle.space) throw input_error("--bx needs a ball space document");
        bundle.bx = parse_bx_assignment(a.bx, *bundle.space);
    }

    if (a.check_bx) {
        if (!bundle.space || !bundle.bx)
            throw input_error("--check-bx needs a ball space and an assignment");
        SelfMap map_for_space = *bundle.f;
        if (bundle.space->ground().size() != static_cast<int>(map_for_space.image.size()))
            throw input_error("self-map does not cover the ball space ground");
        BxConditionFlags flags = check_bx_conditions(*bundle.space, *bundle.bx, &map_for_space);
        auto show = [&](const char* name, bool v) { out << name << ": " << (v ? "yes" : "no") << "\n"; };
        show("NB", flags.nb);
        show("C1", flags.c1);
        show("C2", flags.c2);
        show("C2s", flags.c2s);
        if (flags.co) show("CO", *flags.co);
        if (flags.fx_in_bx) show("fx-in-Bx", *flags.fx_in_bx);
        return 0;
    }

    if (a.descend) {
        if (!bundle.space) throw input_error("--descend needs a ball space");
        if (a.start.empty()) throw input_error("--descend needs --start");
        Subset start = parse_label_set(a.start, bundle.space->ground());
        DescentResult result = greedy_fixed_point(*bundle.space, *bundle.f, start);
        out << "trace:";
        for (Subset b : result.trace) out << ' ' << subset_to_string(bundle.space->ground(), b);
        out << "\n";
        if (result.fixed_point) {
            out << "fixed point: " << bundle.space->ground().label(*result.fixed_point) << "\n";
            return 0;
        }
        out << "no fixed point; minimal f-closed ball "
            << subset_to_string(bundle.space->ground(), result.terminal) << "\n";
        return 1;
    }

    if (a.kt_suite) {
        if (!bundle.space) throw input_error("--kt-suite needs a ball space");
        KnasterTarskiReport rep = knaster_tarski_suite(*bundle.space, *bundle.f);
        out << "hypothesis (balls): " << (rep.hypothesis_plain ? "holds" : "fails") << "\n";
        out << "hypothesis (f-closed balls): " << (rep.hypothesis_fclosed ? "holds" : "fails")
            << "\n";
        if (rep.failing_ball)
            out << "failing ball: " << subset_to_string(bundle.space->ground(), *rep.failing_ball)
                << "\n";
        out << "Fix(f) = " << subset_to_string(bundle.space->ground(), rep.fix) << "\n";
        if (rep.fix_space)
            out << "(Fix, B∩Fix) S*: " << (rep.fix_space_is_s_star ? "yes" : "no") << "\n";
        if (rep.fix_space_fclosed)
            out << "(Fix, B^f∩Fix) S*: " << (rep.fclosed_space_is_s_star ? "yes" : "no") << "\n";
        out << "ball continuous: " << (rep.ball_continuous ? "yes" : "no") << "\n";
        if (rep.ball_continuous)
            out << "induced families equal: " << (rep.induced_families_equal ? "yes" : "no")
                << "\n";
        if (!rep.hypothesis_plain && !rep.hypothesis_fclosed) return 1;
        bool sound = (!rep.fix_space || rep.fix_space_is_s_star) &&
                     (!rep.fix_space_fclosed || rep.fclosed_space_is_s_star) &&
                     (!rep.ball_continuous || rep.induced_families_equal);
        if (!sound) {
            err << "soundness alarm: Knaster-Tarski assertion failed\n";
            return 3;
        }
        return rep.hypothesis_plain ? 0 : 1;
    }

    if (a.theorem.empty()) throw input_error("fixpoint needs --theorem (or --descend/--kt-suite)");
    auto id = parse_theorem_id(a.theorem);
    if (!id) throw input_error("unknown theorem '" + a.theorem + "'");
    TheoremOutcome outcome = verify_theorem(*id, bundle);
    out << "hypotheses: " << (outcome.hypotheses_hold ? "hold" : "fail") << "\n";
    if (outcome.hypotheses_hold)
        out << "conclusion: " << (outcome.conclusion_holds ? "holds" : "fails") << "\n";
    if (!outcome.witness.empty()) out << outcome.witness << "\n";
    if (!outcome.hypotheses_hold) return 1;
    if (!outcome.conclusion_holds) {
        err << "soundness alarm: hypotheses hold but the conclusion fails\n";
        return 3;
    }
    return 0;
}

struct MineArgs {
    int n = 3;
    std::string mode = "implications";
    std::string prop_a, prop_b;
    bool canonical = false;
    int jobs = 1;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    bool json = false;
};

int run_mine(const MineArgs& a, std::ostream& out, std::ostream& err) {
    MinerJob job;
    job.n = a.n;
    job.canonical_only = a.canonical;
    job.prop_a = a.prop_a;
    job.prop_b = a.prop_b;
    if (a.mode == "implications") {
        job.mode = MinerJob::Mode::Implications;
        ImplicationSummary summary = *run_miner_job(job, a.jobs).implications;
        if (a.json) {
            nlohmann::json doc;
            doc["spaces"] = summary.covered;
            doc["representatives"] = summary.representatives;
            doc["violations"] = summary.violations;
            doc["property_counts"] = summary.property_counts;
            out << doc.dump(2) << "\n";
        } else {
            out << summary.covered << " spaces, " << summary.violations << " violations\n";
            if (a.canonical)
                out << summary.representatives << " canonical representatives\n";
            for (const auto& [name, count] : summary.property_counts)
                out << "  " << name << ": " << count << "\n";
        }
        for (const auto& note : summary.violation_notes) err << "soundness alarm: " << note << "\n";
        return summary.violations == 0 ? 0 : 3;
    }
    if (a.mode == "equivalence") {
        job.mode = MinerJob::Mode::EquivalenceTable;
        EquivalenceSummary summary = *run_miner_job(job, a.jobs).equivalence;
        if (a.json) {
            nlohmann::json doc;
            doc["spaces"] = summary.covered;
            doc["violations"] = summary.violations;
            auto rows = nlohmann::json::array();
            for (const auto& row : summary.rows)
                rows.push_back({{"condition", row.condition},
                                {"spaces", row.spaces},
                                {"violations", row.violations}});
            doc["rows"] = rows;
            out << doc.dump(2) << "\n";
        } else {
            out << summary.covered << " spaces, " << summary.violations << " violations\n";
            for (const auto& row : summary.rows)
                out << "  " << row.condition << ": " << row.spaces << " spaces, "
                    << row.violations << " violations\n";
        }
        for (const auto& note : summary.violation_notes) err << "soundness alarm: " << note << "\n";
        return summary.violations == 0 ? 0 : 3;
    }
    if (a.mode == "witness") {
        if (a.prop_a.empty() || a.prop_b.empty())
            throw input_error("witness mode needs --propA and --propB");
        job.mode = MinerJob::Mode::Witness;
        auto result = run_miner_job(job, a.jobs).witness;
        if (!result) {
            out << "exhausted: no witness with " << a.prop_a << " and not " << a.prop_b
                << " at n=" << a.n << "\n";
            return 0;
        }
        out << result->note << "\n";
        out << (a.json ? emit_ballspace_json(result->space) : emit_ballspace(result->space));
        return 1;
    }
    if (a.mode == "agreement") {
        AgreementSummary summary = fast_exhaustive_agreement(a.n, a.samples, a.seed, a.jobs);
        out << summary.checked << " spaces checked, " << summary.mismatches << " mismatches\n";
        for (const auto& note : summary.mismatch_notes) err << "soundness alarm: " << note << "\n";
        return summary.mismatches == 0 ? 0 : 3;
    }
    throw input_error("mine mode must be implications, equivalence, witness or agreement");
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite ball space toolkit"};
    app.require_subcommand(1);

    ClassifyArgs classify_args;
    CLI::App* classify_cmd = app.add_subcommand("classify", "decide the hierarchy properties");
    classify_cmd->add_option("file", classify_args.file, "ball space document")->required();
    classify_cmd->add_flag("--exhaustive", classify_args.exhaustive,
                           "literally enumerate every subfamily");
    classify_cmd->add_flag("--witness", classify_args.witness, "print failure witnesses");
    classify_cmd->add_flag("--json", classify_args.json, "JSON report");

    ConstructArgs construct_args;
    CLI::App* construct_cmd = app.add_subcommand("construct", "apply a ball space operator");
    construct_cmd->add_option("--op", construct_args.op, "singletons|top|union|close-fun|close-fint|close-int|close-nint|close-full|topology|subspace|scl")
        ->required();
    construct_cmd->add_option("files", construct_args.files, "input documents");
    construct_cmd->add_option("--region", construct_args.region, "subspace region labels");
    construct_cmd->add_option("--set", construct_args.set, "subset labels for scl");
    construct_cmd->add_flag("--json", construct_args.json, "JSON output");

    ProductArgs product_args;
    CLI::App* product_cmd = app.add_subcommand("product", "product of ball spaces");
    product_cmd->add_option("--mode", product_args.mode, "pr|tpr|bpr")->required();
    product_cmd->add_option("files", product_args.files, "factor documents")->required();
    product_cmd->add_flag("--json", product_args.json, "JSON output");

    InstanceArgs instance_args;
    CLI::App* instance_cmd = app.add_subcommand("instance", "derive a ball space from instance data");
    instance_cmd->add_option("--kind", instance_args.kind, "metric|ultrametric|poset|topology|ck|ot")
        ->required();
    instance_cmd->add_option("file", instance_args.file, "instance document")->required();
    instance_cmd->add_option("--variant", instance_args.variant,
                             "closed|precise|full (ultrametric), principal|segments (poset)");
    instance_cmd->add_option("--radii", instance_args.radii, "all or comma-separated rationals");
    instance_cmd->add_flag("--assignment", instance_args.assignment,
                           "print the B_x assignment instead of the document (ck/ot)");
    instance_cmd->add_flag("--json", instance_args.json, "JSON output");

    FixpointArgs fixpoint_args;
    CLI::App* fixpoint_cmd = app.add_subcommand("fixpoint", "fixed-point theorems and descent");
    fixpoint_cmd->add_option("file", fixpoint_args.file, "input document")->required();
    fixpoint_cmd->add_option("--map", fixpoint_args.map, "self-map, e.g. \"a:b,b:b\"")->required();
    fixpoint_cmd->add_option("--kind", fixpoint_args.kind, "ballspace|poset|ck|ot");
    fixpoint_cmd->add_option("--theorem", fixpoint_args.theorem, "theorem id (see README)");
    fixpoint_cmd->add_option("--bx", fixpoint_args.bx, "B_x assignment, e.g. \"x:a b;y:c\"");
    fixpoint_cmd->add_flag("--descend", fixpoint_args.descend, "run the greedy descent");
    fixpoint_cmd->add_option("--start", fixpoint_args.start, "starting f-closed ball labels");
    fixpoint_cmd->add_flag("--kt-suite", fixpoint_args.kt_suite, "run the Knaster-Tarski suite");
    fixpoint_cmd->add_flag("--check-bx", fixpoint_args.check_bx, "evaluate the B_x condition flags");

    MineArgs mine_args;
    CLI::App* mine_cmd = app.add_subcommand("mine", "exhaustive enumeration and witness search");
    mine_cmd->add_option("--n", mine_args.n, "ground size (1..4)")->required();
    mine_cmd->add_option("--mode", mine_args.mode, "implications|equivalence|witness|agreement");
    mine_cmd->add_option("--propA", mine_args.prop_a, "property that must hold");
    mine_cmd->add_option("--propB", mine_args.prop_b, "property that must fail");
    mine_cmd->add_flag("--canonical", mine_args.canonical, "one representative per orbit");
    mine_cmd->add_option("--jobs", mine_args.jobs, "worker threads");
    mine_cmd->add_option("--samples", mine_args.samples, "sample count for agreement mode");
    mine_cmd->add_option("--seed", mine_args.seed, "seed for sampled sweeps");
    mine_cmd->add_flag("--json", mine_args.json, "JSON summary");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (classify_cmd->parsed()) return run_classify(classify_args, out, err);
        if (construct_cmd->parsed()) return run_construct(construct_args, out, err);
        if (product_cmd->parsed()) return run_product(product_args, out, err);
        if (instance_cmd->parsed()) return run_instance(instance_args, out, err);
        if (fixpoint_cmd->parsed()) return run_fixpoint(fixpoint_args, out, err);
        if (mine_cmd->parsed()) return run_mine(mine_args, out, err);
        err << "error: no subcommand\n";
        return 2;
    } catch (const soundness_error& e) {
        err << "soundness alarm: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace ballspace
