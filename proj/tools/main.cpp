#include "commands.hpp"
#include "spec_file.hpp"
#include "tori/error.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace tori::cli;
    CLI::App app{"Tame elliptic tori: Weyl classes, Kac points and rational classification"};
    app.require_subcommand(1);
    Options o;
    std::string q_text;

    auto add_common = [&](CLI::App* sub, bool needs_spec) {
        auto* opt = sub->add_option("--spec", o.spec_path, "group spec file (YAML)");
        if (needs_spec) opt->required();
        sub->add_option("--q", q_text, "comma separated residue field sizes");
        sub->add_option("--format", o.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
        sub->add_option("--max-weyl-order", o.max_weyl_order, "refuse larger Weyl groups");
    };
    auto* classes = app.add_subcommand("classes", "list twisted classes of the Weyl group");
    auto* kac = app.add_subcommand("kac", "alcove points and Kac coordinates of elliptic classes");
    auto* classify = app.add_subcommand("classify", "stable, embedding and rational class counts per q");
    auto* svg = app.add_subcommand("alcove-svg", "draw the alcove with the elliptic points");
    auto* self = app.add_subcommand("selftest", "run structural suites and golden tables");
    for (auto* s : {classes, kac, classify, svg}) add_common(s, true);
    svg->add_option("--out", o.out, "output SVG path")->required();
    self->add_option("--format", o.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    self->add_flag("--inject-fault", o.inject_fault, "corrupt a structure constant before the Tits suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }
    if (!q_text.empty()) {
        try {
            o.qs = parse_q_list(q_text);
        } catch (const tori::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kInputError;
        }
    }
    if (*classes) return cmd_classes(o, std::cout, std::cerr);
    if (*kac) return cmd_kac(o, std::cout, std::cerr);
    if (*classify) return cmd_classify(o, std::cout, std::cerr);
    if (*svg) return cmd_alcove_svg(o, std::cout, std::cerr);
    return cmd_selftest(o, std::cout, std::cerr);
}
