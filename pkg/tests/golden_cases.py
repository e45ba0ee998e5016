"""Preset x flagship subcommand pairs with checked-in JSON reports under tests/golden/."""

PRESET_WEIGHTS = {
    "weyl": ["h=1"],
    "dispin": ["h=1", "h=2"],
    "smith(h^2)": ["h=1"],
    "down-up(2,1,1,h)": ["h=3"],
    "woronowicz": ["h=1"],
    "jing-zhang": ["h=1"],
    "uq-sl2": ["K=q^3", "K=q"],
    "quantum-gwa(Z^2, q^2;q^3, K[0]+K[1], 1)": ["K[0]=q,K[1]=q^2"],
    "continuous-hecke-gl1": ["point=1"],
    "wq": ["K=2*q-1"],
}

SLUGS = {
    "weyl": "weyl",
    "dispin": "dispin",
    "smith(h^2)": "smith",
    "down-up(2,1,1,h)": "down-up",
    "woronowicz": "woronowicz",
    "jing-zhang": "jing-zhang",
    "uq-sl2": "uq-sl2",
    "quantum-gwa(Z^2, q^2;q^3, K[0]+K[1], 1)": "quantum-gwa",
    "continuous-hecke-gl1": "continuous-hecke-gl1",
    "wq": "wq",
}


def cases() -> list[tuple[str, list[str]]]:
    out = []
    for preset, weights in PRESET_WEIGHTS.items():
        slug = SLUGS[preset]
        flags = [a for w in weights for a in ("--weight", w)]
        out.append((f"{slug}.zelems", ["zelems", preset, "--bound", "4"]))
        out.append((f"{slug}.shapovalov", ["shapovalov", preset, "--bound", "3"]))
        out.append((f"{slug}.verma", ["verma", preset, *flags]))
        out.append((f"{slug}.block", ["block", preset, "--weight", weights[0]]))
        out.append((f"{slug}.casimir", ["casimir", preset]))
    out.append(("dispin-dispin.tensor-block", ["tensor-block", "dispin", "dispin", "--weight", "h=1"]))
    out.append(("wq.classical-limit", ["classical-limit", "wq", "--x", "1/2", "--x", "1", "--x", "3/2", "--x", "2"]))
    out.append(("polyexp.two-power", ["polyexp", "0,0,-1@1", "1@2"]))
    out.append(("rtm.classify", ["rtm-classify", "--zeta", "2", "--primes", "2"]))
    out.append(("rtm.verma", ["rtm-verma", "--zeta", "2", "--primes", "2", "--c", "0", "--qminus", "0,1"]))
    return out
