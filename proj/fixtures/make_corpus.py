# Copyright 2026 The dissbus Authors.
# Licensed under the Apache License, Version 2.0; see LICENSE.
"""Regenerates fixtures/corpus.jsonl (60 synthetic restaurant reviews).

Sentences are drawn from a fixed pool with fixed multiplicities so that the
bi-term counts, and therefore the strained set at C=8, stay stable.
"""

import json
import random
from pathlib import Path

EXAMPLE = (
    "great taste, simple dish. never tried poke before. wow. go for the spicy dish. "
    "excellent. don't be discouraged by the way it looks from outside, it truly is a "
    "hole in the wall but, well worth it. plan on going again before we go back home."
)

POOL = [
    ("the food was good.", 9),
    ("the food was very good.", 3),
    ("the food was not good.", 2),
    ("the food was great.", 10),
    ("we went with dr. lee and the food was great.", 1),
    ("the prices are fair and the food good.", 1),
    ("the service was good.", 10),
    ("the staff were friendly.", 8),
    ("the staff were friendly, attentive, and fast.", 2),
    ("i highly recommend this place.", 9),
    ("great place.", 10),
    ("we will go back.", 8),
    ("we will definitely go back.", 2),
    ("i would never go back.", 1),
    ("the prices are reasonable.", 9),
    ("the service was great.", 9),
    ("the service was friendly.", 8),
    ("the service wasn't friendly.", 1),
    ("the fish was fresh.", 9),
    ("the atmosphere was nice.", 8),
    ("the view was amazing.", 8),
    ("the dessert was delicious.", 8),
    ("the waiter was attentive.", 8),
    ("the place was clean.", 8),
    ("the portions were large.", 8),
    ("it was our first time.", 8),
    ("the prices are fair.", 7),
    ("the ambiance was nice.", 4),
    ("the atmosphere was amazing.", 3),
    ("the steak was amazing.", 4),
    ("the parking is limited.", 2),
    ("the bar is small.", 3),
    ("the burger was great.", 3),
    ("the server was rude.", 3),
    ("the cost is reasonable.", 3),
    ("the dish was spicy.", 4),
    ("the weather was hot.", 2),
    ("the car was old.", 1),
    ("the best fish here!", 2),
    ("it looks great.", 2),
    ("i like the food here.", 2),
    ("i do not like the food here.", 1),
    ("the staff was not helpful.", 1),
    ("the service was excellent.", 2),
    ("we had fish, chicken, and rice.", 2),
    ("well done karai crab.", 1),
    ("sometimes, i find the steak too well done.", 1),
    ("well done to the staff.", 1),
    ("the garlic ahi was done well.", 1),
    ("flavors were really done well.", 1),
]

TITLES = ["great lunch", "dinner", "nice spot", "family night", "worth it", "so so", "aloha", "date night"]


def main():
    rng = random.Random(20261019)
    sentences = [s for s, n in POOL for _ in range(n)]
    rng.shuffle(sentences)

    n_reviews = 59
    sizes = [1] * n_reviews
    for _ in range(len(sentences) - n_reviews):
        sizes[rng.randrange(n_reviews)] += 1

    reviews = [{"id": "r000", "title": "poke", "body": EXAMPLE, "rating": 5, "date": "2017-03-02"}]
    cursor = 0
    for i, size in enumerate(sizes, start=1):
        body = " ".join(sentences[cursor:cursor + size])
        cursor += size
        review = {"id": f"r{i:03d}", "title": rng.choice(TITLES), "body": body, "rating": rng.randint(1, 5)}
        if i % 3:
            review["date"] = f"2017-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"
        reviews.append(review)

    # The scoring example appears verbatim, without a closing period.
    reviews[-1]["body"] += " the parking is limited"

    out = Path(__file__).with_name("corpus.jsonl")
    with out.open("w") as f:
        for r in reviews:
            f.write(json.dumps(r) + "\n")


if __name__ == "__main__":
    main()
