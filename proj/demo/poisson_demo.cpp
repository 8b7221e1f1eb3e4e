// Builds pi = x1 x2 d1^d2 on R^2, checks it is Poisson, and writes pi ^^ pi as the
// boundary of an explicit 3-chain.

#include <iostream>

#include "schouten/schouten.hpp"

int main()
{
    using namespace schouten;
    const MultiVector pi = parse_multivector("1/1 * x[1,1] d[1,2]");
    std::cout << "pi          = " << to_text(pi) << "\n";
    std::cout << "[pi, pi]    = " << to_text(schouten_bracket(pi, pi)) << "\n";
    std::cout << "Poisson     : " << (is_poisson(pi) ? "yes" : "no") << "\n";

    const Chain u = wedge_chain(as_chain(pi), as_chain(pi));
    const auto sig = weight_signature(u.terms().begin()->first);
    std::cout << "pi ^^ pi    in C_2^(" << sig.w << "," << sig.h << ")\n";

    const ExactnessCertificate cert = certify_exact(u, 2, sig.w);
    std::cout << "annihilator = " << cert.annihilator.to_string() << "\n";
    std::cout << "V has " << cert.primitive.size() << " terms; d V == pi ^^ pi: "
              << (boundary(cert.primitive) == u ? "yes" : "no") << "\n";
    for (const auto& line : to_text_lines(cert.primitive))
        std::cout << "  " << line << "\n";
}
