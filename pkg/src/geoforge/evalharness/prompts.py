"""Prompt templates for the model runner.

One template per language; the answer contract (a final ``ANSWER:`` line)
matches the first layer of the answer parser.
"""

PROMPT_EN = """\
You are given a plane-geometry problem. Exactly four options A, B, C, D are
shown; one, two, or three of them are true statements that follow from the
given conditions. Examine each option independently and decide whether it
is provable from the conditions.

{statement}

Options:
A. {option_a}
B. {option_b}
C. {option_c}
D. {option_d}

Give brief option-by-option reasoning. Then, on the last line, output your
final choice exactly in the form:
ANSWER: <letters separated by commas>
"""

PROMPT_ZH = """\
下面是一道平面几何题。题目给出四个选项A、B、C、D，其中一到三个选项是由已知
条件可以证明的真命题。请逐一判断每个选项能否由条件推出。

{statement}

选项：
A. {option_a}
B. {option_b}
C. {option_c}
D. {option_d}

请对每个选项给出简要理由，最后一行严格按如下格式输出最终答案：
ANSWER: <用逗号分隔的选项字母>
"""


def build_prompt(statement: str, options: list[str], lang: str = "en") -> str:
    template = PROMPT_EN if lang.lower() == "en" else PROMPT_ZH
    return template.format(statement=statement, option_a=options[0],
                           option_b=options[1], option_c=options[2],
                           option_d=options[3])
