#!/usr/bin/env python3
"""Regenerates the mock resources under data/mock and the corpora under
data/fixtures. Output is fully determined by SEED; rerunning overwrites the
checked-in files with identical bytes."""

import json
import pathlib
import random

import numpy as np

SEED = 20231
ROOT = pathlib.Path(__file__).resolve().parent.parent
MOCK = ROOT / "data" / "mock"
FIXTURES = ROOT / "data" / "fixtures"

DIM = 16

# word -> (cluster, valence, arousal, dominance); VAD on [0,1]
CLUSTERS = {
    "anger": ["angry", "furious", "rage", "mad", "hate", "livid", "irritated", "annoyed", "fuming", "outraged"],
    "fear": ["afraid", "scared", "terrified", "panic", "anxious", "nervous", "dread", "frightened", "horror", "worried"],
    "sadness": ["sad", "unhappy", "miserable", "depressed", "grief", "crying", "heartbroken", "sorrowful", "tears", "down"],
    "disgust": ["disgusted", "gross", "sick", "revolting", "nasty", "vile"],
    "joy": ["happy", "glad", "joyful", "delighted", "cheerful", "smiling", "great", "wonderful"],
    "love": ["love", "adore", "caring", "beloved", "affection"],
    "optimism": ["hopeful", "optimistic", "hope", "confident", "better"],
    "pessimism": ["hopeless", "despair", "doomed", "pointless", "useless"],
    "anticipation": ["excited", "eager", "waiting", "expecting", "soon"],
    "surprise": ["surprised", "shocked", "amazed", "unexpected", "suddenly"],
    "trust": ["trust", "reliable", "honest", "safe", "loyal"],
    "neutral": ["day", "work", "home", "friend", "today", "time", "week", "job", "school", "family", "night",
                "morning", "people", "phone", "car", "dog", "coffee", "weather", "city", "house", "boss", "class",
                "exam", "game", "dinner", "mom", "dad", "sister", "brother", "roommate", "team", "office", "bus",
                "train", "movie", "book", "project", "meeting", "email", "weekend", "party", "news", "money"],
}

VAD_BASE = {
    "anger": (0.12, 0.86, 0.55), "fear": (0.10, 0.82, 0.25), "sadness": (0.12, 0.45, 0.25),
    "disgust": (0.15, 0.60, 0.45), "joy": (0.90, 0.65, 0.70), "love": (0.92, 0.55, 0.65),
    "optimism": (0.82, 0.50, 0.70), "pessimism": (0.15, 0.40, 0.25), "anticipation": (0.70, 0.72, 0.60),
    "surprise": (0.55, 0.85, 0.45), "trust": (0.80, 0.35, 0.65), "neutral": (0.55, 0.30, 0.50),
}

KEYWORDS = {
    "anger": ["angry", "furious", "rage", "mad", "hate", "livid", "irritated", "annoyed", "fuming", "outraged"],
    "fear": ["afraid", "scared", "terrified", "panic", "anxious", "nervous", "dread", "frightened", "worried"],
    "sadness": ["sad", "unhappy", "miserable", "depressed", "grief", "crying", "heartbroken", "sorrowful", "tears"],
    "disgust": ["disgusted", "gross", "revolting", "nasty", "vile"],
    "joy": ["happy", "glad", "joyful", "delighted", "cheerful", "smiling", "wonderful"],
    "love": ["love", "adore", "caring", "beloved", "affection"],
    "optimism": ["hopeful", "optimistic", "hope", "confident"],
    "pessimism": ["hopeless", "despair", "doomed", "pointless", "useless"],
    "anticipation": ["excited", "eager", "waiting", "expecting"],
    "surprise": ["surprised", "shocked", "amazed", "unexpected"],
    "trust": ["trust", "reliable", "honest", "loyal"],
}

# English -> pseudo-French -> English. Back-translated words land on
# synonyms, and a few entries offer alternatives so the mock can sample.
EN_FR = {
    "angry": "faché", "furious": "furieux", "hate": "déteste", "mad": "fou", "annoyed": "agacé",
    "afraid": "effrayé", "scared": "apeuré", "terrified": "terrifié", "worried": "inquiet", "nervous": "nerveux",
    "sad": "triste", "unhappy": "malheureux", "crying": "pleure", "depressed": "déprimé", "tears": "larmes",
    "happy": "heureux", "glad": "content", "love": "amour", "hopeful": "pleinespoir", "hope": "espoir",
    "hopeless": "désespéré", "excited": "excité", "surprised": "surpris", "shocked": "choqué", "trust": "confiance",
    "disgusted": "dégoûté", "gross": "dégoûtant",
    "day": "journée", "work": "travail", "home": "maison", "friend": "ami", "today": "aujourd'hui",
    "time": "temps", "week": "semaine", "job": "emploi", "school": "école", "family": "famille",
    "night": "nuit", "morning": "matin", "people": "gens", "boss": "patron", "exam": "examen", "dinner": "dîner",
    "mom": "maman", "dad": "papa", "roommate": "colocataire", "money": "argent", "really": "vraiment",
    "very": "très", "so": "tellement", "feel": "sens", "i": "je", "my": "mon", "the": "le", "and": "et",
    "is": "est", "am": "suis", "was": "était", "about": "apropos", "after": "après", "because": "parceque",
}
FR_EN = {
    "faché": ["angry", "upset"], "furieux": ["furious", "enraged"], "déteste": ["hate", "detest"],
    "fou": ["mad", "crazy"], "agacé": ["irritated", "annoyed"],
    "effrayé": ["frightened", "afraid"], "apeuré": ["afraid", "scared"], "terrifié": ["terrified"],
    "inquiet": ["worried", "anxious"], "nerveux": ["anxious", "nervous"],
    "triste": ["unhappy", "sad"], "malheureux": ["miserable", "unhappy"], "pleure": ["crying", "weeping"],
    "déprimé": ["depressed"], "larmes": ["tears"],
    "heureux": ["glad", "happy"], "content": ["happy", "pleased"], "amour": ["love", "affection"],
    "pleinespoir": ["hopeful", "optimistic"], "espoir": ["hope"], "désespéré": ["hopeless", "desperate"],
    "excité": ["eager", "excited"], "surpris": ["amazed", "surprised"], "choqué": ["shocked"],
    "confiance": ["trust", "confidence"], "dégoûté": ["disgusted"], "dégoûtant": ["nasty", "gross"],
    "journée": ["day"], "travail": ["job", "work"], "maison": ["house", "home"], "ami": ["friend", "buddy"],
    "aujourd'hui": ["today", "this day"], "temps": ["time", "weather"], "semaine": ["week"],
    "emploi": ["work", "job"], "école": ["school"], "famille": ["family"], "nuit": ["night", "evening"],
    "matin": ["morning"], "gens": ["people", "folks"], "patron": ["boss", "manager"], "examen": ["test", "exam"],
    "dîner": ["dinner", "supper"], "maman": ["mother", "mom"], "papa": ["father", "dad"],
    "colocataire": ["flatmate", "roommate"], "argent": ["money", "cash"], "vraiment": ["truly", "really"],
    "très": ["quite", "very"], "tellement": ["so", "extremely"], "sens": ["feel"], "je": ["i"],
    "mon": ["my"], "le": ["the"], "et": ["and"], "est": ["is"], "suis": ["am"], "était": ["was"],
    "apropos": ["regarding", "about"], "après": ["after", "following"], "parceque": ["since", "because"],
}

SUBREDDITS = ["offmychest", "depression", "anxiety", "happy", "rant", "casualconversation"]

OPENERS = ["I feel", "Today I am", "Honestly I was", "My roommate made me", "After work I felt", "I am so",
           "This week I have been", "My boss made me", "Last night I was", "Right now I feel"]
FILLERS = ["about my job", "because of the exam", "after dinner with my family", "at school today",
           "when my mom called", "about the money", "because the bus was late", "after the meeting",
           "on the weekend", "about my friend", "because my dog got sick", "at the office", "about the news"]
CLOSERS = ["and I do not know what to do.", "and it keeps happening.", "so I wanted to share it here.",
           "but I will try again tomorrow.", "and nobody seems to care.", "which is new for me.",
           "and I cannot sleep.", "and my friend helped a lot.", "so thanks for reading.", "lol."]


def write_lines(path, lines):
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def make_embeddings(rng):
    centers = {c: rng.normal(size=DIM) for c in CLUSTERS}
    # negative emotions share a direction so they sit near each other
    shared = rng.normal(size=DIM)
    for c in ("anger", "fear", "sadness", "disgust", "pessimism"):
        centers[c] = centers[c] + 1.2 * shared
    lines = []
    for cluster, words in CLUSTERS.items():
        scale = 0.9 if cluster == "neutral" else 0.45
        for w in words:
            v = centers[cluster] + scale * rng.normal(size=DIM)
            lines.append(w + " " + " ".join(f"{x:.5f}" for x in v))
    extra = ["upset", "enraged", "detest", "crazy", "frightened", "weeping", "pleased", "desperate", "confidence",
             "buddy", "mother", "father", "flatmate", "manager", "supper", "folks", "cash", "evening", "test"]
    for w in extra:
        v = rng.normal(size=DIM)
        lines.append(w + " " + " ".join(f"{x:.5f}" for x in v))
    write_lines(MOCK / "embeddings.txt", lines)


def make_vad(rng):
    lines = ["word\tvalence\tarousal\tdominance"]
    for cluster, words in CLUSTERS.items():
        v0, a0, d0 = VAD_BASE[cluster]
        for w in words:
            v, a, d = (min(1.0, max(0.0, x + rng.uniform(-0.08, 0.08))) for x in (v0, a0, d0))
            lines.append(f"{w}\t{v:.3f}\t{a:.3f}\t{d:.3f}")
    write_lines(MOCK / "vad.tsv", lines)


def make_tables():
    lines = ["# keyword<TAB>emotion"]
    for emotion, words in KEYWORDS.items():
        lines += [f"{w}\t{emotion}" for w in words]
    write_lines(MOCK / "keywords.tsv", lines)
    write_lines(MOCK / "en_fr.tsv", ["# English -> pseudo-French word table"] +
                [f"{k}\t{v}" for k, v in sorted(EN_FR.items())])
    write_lines(MOCK / "fr_en.tsv", ["# pseudo-French -> English; '|' separates alternatives"] +
                [f"{k}\t{'|'.join(v)}" for k, v in sorted(FR_EN.items())])


def emotional_sentence(rng, emotions):
    words = [rng.choice(KEYWORDS[e]) for e in emotions]
    opener = rng.choice(OPENERS)
    body = " and ".join(words)
    return f"{opener} {body} {rng.choice(FILLERS)} {rng.choice(CLOSERS)}"


def make_reddit(rng):
    records = []
    emotions = list(KEYWORDS)
    for i in range(120):
        k = rng.choice([0, 1, 1, 1, 2, 2, 3])
        chosen = rng.sample(emotions, k)
        # repeat keywords in some posts so confidences vary
        if chosen and rng.random() < 0.35:
            chosen.append(chosen[0])
        title = rng.choice(["", "Rant", "Need to vent", "Small win", "Update", "Weird day", "Thoughts"])
        text = emotional_sentence(rng, chosen) if chosen else \
            f"{rng.choice(OPENERS)} fine {rng.choice(FILLERS)} {rng.choice(CLOSERS)}"
        if rng.random() < 0.4:
            text += " " + emotional_sentence(rng, rng.sample(emotions, 1))
        rec = {"id": f"r{i:04d}", "title": title, "text": text, "source": rng.choice(SUBREDDITS)}
        records.append(rec)
    long_text = " ".join(["work"] * 600)
    records.append({"id": "r_overlong", "title": "Long", "text": long_text, "source": "rant"})
    write_lines(FIXTURES / "reddit_raw.jsonl", [json.dumps(r, ensure_ascii=False, sort_keys=True) for r in records])


IESO_EMOTIONS = ["angry", "excited", "disgusted", "afraid", "happy", "hopeful", "despaired", "sad", "surprised",
                 "lonely", "stressed", "calm", "anxious", "annoyed", "guilty", "numb"]
IESO_TO_KEYWORD = {"angry": "anger", "excited": "anticipation", "disgusted": "disgust", "afraid": "fear",
                   "happy": "joy", "hopeful": "optimism", "despaired": "pessimism", "sad": "sadness",
                   "surprised": "surprise"}


def make_ieso(rng):
    records = []
    for i in range(40):
        ratings = {}
        felt = rng.sample(IESO_EMOTIONS, rng.choice([1, 2, 3]))
        for e in IESO_EMOTIONS:
            ratings[e] = rng.randint(4, 10) if e in felt else rng.randint(1, 3)
        mapped = [IESO_TO_KEYWORD[e] for e in felt if e in IESO_TO_KEYWORD]
        # self-reports and wording disagree now and then
        if mapped and rng.random() < 0.3:
            mapped.pop()
        if rng.random() < 0.25:
            mapped.append(rng.choice(list(KEYWORDS)))
        event = emotional_sentence(rng, mapped) if mapped else \
            f"{rng.choice(OPENERS)} off {rng.choice(FILLERS)} {rng.choice(CLOSERS)}"
        records.append({"id": f"ieso{i:03d}", "title": rng.choice(OPENERS) + " strange today.",
                        "text": event, "ratings": ratings})
    write_lines(FIXTURES / "ieso_raw.jsonl", [json.dumps(r, ensure_ascii=False, sort_keys=True) for r in records])


def main():
    MOCK.mkdir(parents=True, exist_ok=True)
    FIXTURES.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(SEED)
    make_embeddings(rng)
    make_vad(rng)
    make_tables()
    prng = random.Random(SEED)
    make_reddit(prng)
    make_ieso(prng)


if __name__ == "__main__":
    main()
