#!/usr/bin/env python3
"""Writes the bundled synthetic news corpus (data/synthetic_news.jsonl).

Each document opens with three fact sentences that the reference summary
restates. Later sentences echo pairs of earlier facts with different
wording, and generic filler sentences are mixed in. Output is fully
determined by --seed.
"""
import argparse
import json
import random

SUBJECTS = """mayor council union engineers inspectors regulators senators doctors farmers
pilots students teachers investors bankers miners firefighters nurses judges scientists
developers fishermen architects brewers librarians sailors drivers chefs tenants
shareholders volunteers""".split()
ACTIONS = """approved rejected delayed audited suspended expanded repaired funded blocked
launched halted reviewed relocated sued praised inspected banned acquired closed renovated
challenged endorsed restored postponed dismantled""".split()
OBJECTS = """bridge pipeline tunnel budget reactor stadium hospital railway airport harbor
dam refinery school museum factory warehouse courthouse library reservoir highway
clinic vineyard orchard shipyard observatory aqueduct""".split()
PLACES = """denver lisbon oslo nairobi lima hanoi quebec perth dublin seville kyoto
tallinn bergen cusco malaga tromso windhoek hobart galway zagreb turku porto""".split()
FILLERS = [
    "Officials said the details would be released later this week.",
    "A spokesperson declined to comment on the matter.",
    "The announcement came after months of public debate.",
    "Local newspapers covered the story extensively.",
    "Several groups issued statements in response.",
    "Observers expect further developments in the coming days.",
    "The weather was mild throughout the weekend.",
    "Traffic in the area remained light on Tuesday.",
]
ECHO_TEMPLATES = [
    "Witnesses linked the {s1} and the {o1} to the {s2} and the {o2} afterwards.",
    "Critics compared the {s1} and its {o1} with the {s2} and its {o2}.",
    "Reports tied the {o1} case involving the {s1} to the {s2} and the {o2}.",
]


def make_doc(idx, rng):
    subjects = rng.sample(SUBJECTS, 3)
    actions = rng.sample(ACTIONS, 3)
    objects = rng.sample(OBJECTS, 3)
    places = rng.sample(PLACES, 3)
    facts = list(zip(subjects, actions, objects, places))

    leads = [f"The {s} {a} the {o} in {p.capitalize()} on Monday." for s, a, o, p in facts]
    reference = " ".join(
        f"In {p.capitalize()}, the {s} {a} the {o}." for s, a, o, p in facts)

    echoes = []
    for a, b in [(0, 1), (1, 2), (0, 2), (0, 1)]:
        tpl = rng.choice(ECHO_TEMPLATES)
        echoes.append(tpl.format(s1=facts[a][0], o1=facts[a][2], s2=facts[b][0], o2=facts[b][2]))
    body = echoes + rng.sample(FILLERS, 4)
    rng.shuffle(body)
    return {"id": f"syn-{idx:02d}", "text": " ".join(leads + body), "summary": reference}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--docs", type=int, default=20)
    ap.add_argument("--seed", type=int, default=2019)
    ap.add_argument("--output", default="data/synthetic_news.jsonl")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    with open(args.output, "w", encoding="utf-8") as f:
        for i in range(args.docs):
            f.write(json.dumps(make_doc(i, rng)) + "\n")


if __name__ == "__main__":
    main()
