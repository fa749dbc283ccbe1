#!/usr/bin/env python3
"""Write an analogy test set in the usual ": section" / "a b c d" layout.

Every ordered pair of distinct word pairs within a section becomes one line.
Usage: make_analogies.py OUT.txt
"""
import sys

SECTIONS = {
    "capital-common-countries": """athens greece baghdad iraq bangkok thailand beijing china berlin germany
        bern switzerland cairo egypt canberra australia hanoi vietnam havana cuba helsinki finland
        islamabad pakistan kabul afghanistan london england madrid spain moscow russia oslo norway
        ottawa canada paris france rome italy stockholm sweden tehran iran tokyo japan""",
    "family": """boy girl brother sister brothers sisters dad mom father mother grandfather grandmother
        grandpa grandma grandson granddaughter groom bride he she his her husband wife king queen
        man woman nephew niece policeman policewoman prince princess son daughter sons daughters
        stepbrother stepsister stepfather stepmother stepson stepdaughter uncle aunt""",
    "gram1-adjective-to-adverb": """amazing amazingly apparent apparently calm calmly cheerful cheerfully
        complete completely efficient efficiently fortunate fortunately free freely furious furiously
        happy happily immediate immediately infrequent infrequently lucky luckily most mostly
        obvious obviously occasional occasionally possible possibly precise precisely
        professional professionally quick quickly quiet quietly rapid rapidly rare rarely
        reluctant reluctantly safe safely serious seriously slow slowly sudden suddenly swift swiftly
        typical typically unfortunate unfortunately usual usually""",
    "gram2-opposite": """acceptable unacceptable aware unaware certain uncertain clear unclear
        comfortable uncomfortable competitive uncompetitive consistent inconsistent
        convincing unconvincing convenient inconvenient decided undecided efficient inefficient
        ethical unethical fortunate unfortunate honest dishonest impressive unimpressive
        informative uninformative informed uninformed known unknown likely unlikely logical illogical
        pleasant unpleasant possible impossible possibly impossibly productive unproductive
        rational irrational reasonable unreasonable responsible irresponsible sure unsure
        tasteful distasteful""",
    "gram3-comparative": """bad worse big bigger bright brighter cheap cheaper cold colder cool cooler
        deep deeper easy easier fast faster good better great greater hard harder heavy heavier
        high higher hot hotter large larger long longer loud louder low lower new newer old older
        quick quicker safe safer sharp sharper short shorter simple simpler slow slower small smaller
        smart smarter strong stronger tall taller tight tighter tough tougher warm warmer weak weaker
        wide wider young younger""",
    "gram4-superlative": """bad worst big biggest bright brightest cold coldest cool coolest dark darkest
        easy easiest fast fastest good best great greatest heavy heaviest high highest hot hottest
        large largest long longest low lowest lucky luckiest old oldest quick quickest sharp sharpest
        simple simplest short shortest slow slowest small smallest smart smartest strange strangest
        strong strongest sweet sweetest tall tallest tasty tastiest warm warmest weak weakest
        wide widest young youngest""",
    "gram5-present-participle": """code coding dance dancing debug debugging decrease decreasing
        describe describing discover discovering enhance enhancing fly flying generate generating
        go going implement implementing increase increasing invent inventing jump jumping
        listen listening look looking move moving play playing predict predicting read reading
        run running say saying scream screaming see seeing shuffle shuffling sing singing sit sitting
        slow slowing swim swimming think thinking vanish vanishing walk walking write writing""",
    "gram6-nationality-adjective": """albania albanian argentina argentinean australia australian
        austria austrian belarus belorussian brazil brazilian bulgaria bulgarian cambodia cambodian
        chile chilean china chinese colombia colombian croatia croatian denmark danish egypt egyptian
        england english france french germany german greece greek iceland icelandic india indian
        ireland irish israel israeli italy italian japan japanese korea korean macedonia macedonian
        malta maltese mexico mexican moldova moldovan netherlands dutch norway norwegian peru peruvian
        poland polish portugal portuguese russia russian slovakia slovakian spain spanish
        sweden swedish switzerland swiss thailand thai ukraine ukrainian""",
    "gram7-past-tense": """dancing danced decreasing decreased describing described enhancing enhanced
        falling fell feeding fed flying flew generating generated going went hiding hid hitting hit
        implementing implemented increasing increased jumping jumped knowing knew listening listened
        looking looked moving moved paying paid playing played predicting predicted reading read
        running ran saying said screaming screamed seeing saw selling sold shrinking shrank
        singing sang sitting sat sleeping slept slowing slowed spending spent striking struck
        swimming swam taking took thinking thought vanishing vanished walking walked writing wrote""",
    "gram8-plural": """banana bananas bird birds bottle bottles building buildings car cars cat cats
        child children cloud clouds color colors computer computers cow cows dog dogs dollar dollars
        donkey donkeys dream dreams eagle eagles elephant elephants eye eyes finger fingers goat goats
        hand hands horse horses lion lions machine machines mango mangoes man men melon melons
        monkey monkeys mouse mice onion onions pear pears pig pigs pineapple pineapples rat rats
        road roads snake snakes woman women""",
    "gram9-plural-verbs": """decrease decreases describe describes eat eats enhance enhances
        estimate estimates find finds generate generates go goes implement implements
        increase increases listen listens play plays predict predicts provide provides say says
        scream screams search searches see sees shuffle shuffles sing sings sit sits slow slows
        speak speaks swim swims talk talks think thinks vanish vanishes walk walks work works
        write writes""",
}


def main():
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    with open(sys.argv[1], "w", encoding="utf-8") as out:
        for name, text in SECTIONS.items():
            words = text.split()
            pairs = list(zip(words[0::2], words[1::2]))
            out.write(f": {name}\n")
            for i, (a, b) in enumerate(pairs):
                for j, (c, d) in enumerate(pairs):
                    if i != j:
                        out.write(f"{a} {b} {c} {d}\n")


if __name__ == "__main__":
    main()
