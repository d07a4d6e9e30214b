// Regenerates the bundled fixture files under the directory given as the
// first argument (default: fixtures).  The manifest holds the canonical
// count summary of the 3-layer benchmark complex.

#include <filesystem>
#include <iostream>
#include <string>

#include "cmx/complex.hpp"
#include "cmx/fixtures.hpp"
#include "cmx/io.hpp"

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    fs::path dir = argc > 1 ? argv[1] : "fixtures";
    fs::create_directories(dir);

    const std::pair<const char*, cmx::ComplexSpec> specs[] = {
        {"tri.json", cmx::fixtures::tri()},
        {"fig2.json", cmx::fixtures::fig2()},
        {"fig3.json", cmx::fixtures::fig3()},
        {"fig3_open.json", cmx::fixtures::fig3_open()},
        {"f3.json", cmx::fixtures::f3()},
    };
    for (const auto& [name, spec] : specs) {
        cmx::write_complex_file((dir / name).string(), spec);
        std::cout << "wrote " << (dir / name).string() << "\n";
    }

    cmx::CellMultiComplex f3 = cmx::build_complex(cmx::fixtures::f3());
    cmx::write_text_file((dir / "f3_manifest.json").string(), cmx::counts_json(f3));
    std::cout << "wrote " << (dir / "f3_manifest.json").string() << "\n";
    return 0;
}
