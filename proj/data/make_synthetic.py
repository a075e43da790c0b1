"""Generates data/bench/synthetic_1000.csv: a seeded, noisy categorical
classification problem used by the CV timing and monotonicity checks."""
import random

ATTRS = {
    "buying": ["vhigh", "high", "med", "low"],
    "maint": ["vhigh", "high", "med", "low"],
    "doors": ["2", "3", "4", "5more"],
    "persons": ["2", "4", "more"],
    "lug_boot": ["small", "med", "big"],
    "safety": ["low", "med", "high"],
    "color": ["red", "blue", "green", "black"],
    "region": ["north", "south", "east", "west"],
}


def label(r, rng):
    if r["safety"] == "low" or r["persons"] == "2":
        cls = "unacc"
    elif r["buying"] in ("vhigh", "high") and r["maint"] in ("vhigh", "high"):
        cls = "unacc"
    elif r["safety"] == "high" and r["lug_boot"] != "small":
        cls = "good" if r["buying"] in ("low", "med") else "acc"
    else:
        cls = "acc"
    if rng.random() < 0.08:
        cls = rng.choice(["unacc", "acc", "good"])
    return cls


def main():
    rng = random.Random(20191)
    names = list(ATTRS)
    with open("data/bench/synthetic_1000.csv", "w", newline="\n") as f:
        f.write(",".join(names + ["class"]) + "\n")
        for _ in range(1000):
            row = {a: rng.choice(v) for a, v in ATTRS.items()}
            f.write(",".join([row[a] for a in names] + [label(row, rng)]) + "\n")


if __name__ == "__main__":
    main()
