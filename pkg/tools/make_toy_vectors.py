#!/usr/bin/env python3
"""Build docs/sample/toy.vec: a small .vec-format embedding file covering the
bundled sample texts.

Vectors are synthetic but structured: every word belongs to a theme group and
gets unit_normalize(group_center + noise), so cosine similarity is high inside
a theme and low across themes. That makes the k-NN graph and the clustering
stage behave like they would on real embeddings, at toy scale.

A few deliberately excluded words (OOV_WORDS) exercise the out-of-vocabulary
drop in the pipeline. Deterministic; run once and commit the output:

    python tools/make_toy_vectors.py
"""

import re
from pathlib import Path

import numpy as np

DIM = 64
TARGET_COUNT = 500
SEED = 424242
NOISE = 0.55

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ["beer.txt", "florida.txt", "plum.txt"]
OOV_WORDS = {"zythology", "okeechobee", "mirabelle"}

THEMES = {
    "brewing": """beer malt barley hops hop wort yeast mash kettle boil brewer
        brewery brewing brewpub ale lager stout porter pilsner bock keg cask
        tap pint foam bottle glass pub tavern bartender cellar alcohol
        fermentation ferments brewed brewers batch grain wheat rye kiln sip
        drinker drinkers bitterness bitter""",
    "florida_coast": """florida beach coast ocean gulf peninsula sand surf bay
        reef keys tide sunset shore seas causeway boulevard cape port wave
        cruise sail marina harbor island""",
    "cities": """miami orlando tampa jacksonville city cities suburb suburbs
        downtown highway road street traffic airport train station bridge
        tower plaza market hotel resort""",
    "wetlands": """everglades swamp marsh alligator alligators mangrove manatee
        heron panther cypress levee airboat airboats grass lake river pond
        springs shallows wildlife fish egret turtle frog""",
    "weather": """weather hurricane storm thunder rain snow frost winter summer
        spring autumn season heat humid tropical sunshine cold warm dry wet
        climate wind cloud sky thaw""",
    "plum_botany": """plum blossom flower tree branch petal petals bud buds
        bark trunk orchard bloom blooms fruit pine bamboo cherry garden
        gardens gardener gardeners pruning prune flowering fragrance scent
        blossoms sour tart ripens twisted""",
    "east_asia": """japan china korea asia asian shrine temple lunar
        calligraphy poem poems poets painter painters lacquer vase paper
        fans rice tea dumplings eastern""",
    "preserves": """jam wine vinegar pickled salted sugar sweet salt harvest
        jars kitchen dessert spoon bowl flavor aroma taste recipe steeped
        boiled vendor vendors sold""",
    "people_culture": """people family families festival tradition monks
        monastery abbey visitors tourists tourist walkers students retirees
        crowd scholar friend story history centuries year years season
        million""",
}

FILLERS = """time day night morning evening week month hour moment world life
    work home house door window wall floor roof room table chair book page
    letter word language music song dance art color light shadow fire earth
    stone metal wood paper cloth thread needle knife fork plate cup food
    bread milk cheese egg apple orange lemon grape melon berry nut seed leaf
    root stem field farm barn fence gate path trail mountain hill valley
    forest desert cave cliff stream brook waterfall rainbow star moon sun
    planet space rocket engine wheel wagon cart ship boat anchor rope chain
    tool hammer nail screw ladder bucket barrel box basket bag pocket coin
    money trade shop store market price value number count measure weight
    length width height depth speed power energy force motion balance center
    edge corner side top bottom front back middle point line circle square
    triangle shape form pattern order chaos system method plan idea thought
    mind memory dream hope fear joy anger sorrow love pride courage patience
    wisdom knowledge truth question answer problem solution reason cause
    effect change growth decay birth death health sickness medicine doctor
    nurse teacher student school lesson class test grade prize game sport
    ball goal team player coach referee race run walk jump swim climb fly
    ride drive travel journey visit guest host neighbor stranger friend
    enemy leader follower king queen prince princess soldier guard castle
    kingdom village town country nation border flag law rule order court
    judge jury prison crime theft honor shame glory fame name title sign
    symbol mark stamp seal letter message news report paper journal radio
    screen signal code key lock door bell clock watch ring chain gift prize
    reward debt loan bank vault gold silver copper iron steel glass brick
    clay sand dust mud ice steam smoke flame ash coal oil gas spark bolt"""


def sample_vocabulary():
    words = set()
    for name in SAMPLES:
        text = (ROOT / "docs" / "sample" / name).read_text(encoding="utf-8")
        for raw in re.findall(r"[A-Za-z\-]+", text.lower()):
            token = raw.strip("-")
            if token:
                words.add(token)
    return words


def main():
    rng = np.random.default_rng(SEED)

    assigned: dict[str, str] = {}
    for theme, blob in THEMES.items():
        for word in blob.split():
            assigned.setdefault(word, theme)

    vocab = sample_vocabulary() - OOV_WORDS
    misc = [f"misc{k}" for k in range(4)]
    for word in sorted(vocab):
        if word not in assigned:
            # stable bucket: builtin hash() varies across interpreter runs
            assigned[word] = misc[sum(map(ord, word)) % 4]

    for word in FILLERS.split():
        if len(assigned) >= TARGET_COUNT:
            break
        if word not in assigned and word not in OOV_WORDS:
            assigned[word] = misc[sum(map(ord, word)) % 4]

    theme_names = sorted(set(assigned.values()))
    centers = {}
    for theme in theme_names:
        v = rng.normal(size=DIM)
        centers[theme] = v / np.linalg.norm(v)

    lines = [f"{len(assigned)} {DIM}"]
    for word in sorted(assigned):
        center = centers[assigned[word]]
        vec = center + NOISE * rng.normal(size=DIM)
        vec = vec / np.linalg.norm(vec) * rng.uniform(0.8, 1.2)
        comps = " ".join(f"{x:.6f}" for x in vec)
        lines.append(f"{word} {comps}")

    out = ROOT / "docs" / "sample" / "toy.vec"
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(assigned)} words, dim {DIM})")


if __name__ == "__main__":
    main()
