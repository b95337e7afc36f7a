// Copyright 2026 The invgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Prompt template text. Whitespace, including trailing spaces, is significant.

#include "prompt_templates.h"

namespace invgen::internal {

const char* const kAdhocTemplate = R"PROMPT(Compute the loop invariant(s) for the loop(s) in the following Java 
code. Please use the format of JML annotations. Annotate the loop(s) 
with the invariant(s). Provide no additional explanations beyond the 
program code and the required annotation. Reason through your 
solution internally.

```java
{program}
```)PROMPT";

const char* const kWpTemplate = R"PROMPT(**Task: Calculate Weakest Precondition**

You are given a Java program with segmented code. Your task is to 
calculate the weakest precondition (WP) for a specific code 
segment with respect to a given postcondition.

**Segmented Program:**
```java
{segmented_program}
```

**Code Segment to Analyze:**
Segment index: {segment_index} {tag_description}

**Postcondition (must be true AFTER the segment executes):**
{postcondition}

**Instructions:**
1. Identify the code segment between the specified tags
2. Apply weakest precondition calculus rules to work backward 
through the statements
3. For assignments: WP(x := e, R) = R[x -> e] (substitute e for x 
in R)
4. For sequences: WP(S1; S2, R) = WP(S1, WP(S2, R))
5. For conditionals: WP(if B then S1 else S2, R) = (B => WP(S1, 
R)) AND (NOT B => WP(S2, R))
6. Simplify your result as much as possible
7. Express the result using logical notation 
(AND, OR, =>, NOT, FORALL, EXISTS)

**Example:**
For code segment: `x = x + 1;` with postcondition: `x > 5`
The WP would be: `x + 1 > 5` which simplifies to `x > 4`)PROMPT";

const char* const kGenTemplate = R"PROMPT(**Task: Generate Loop Invariant**

You are given a Java program with segmented code. Your task is to 
generate a suitable loop invariant for a specific while loop.

**Segmented Program:**
```java
{segmented_program}
```

**While Loop to Analyze:**
Loop index: {loop_index} (between tags `// while {loop_index} 
open` and `// while {loop_index} close`)

**Loop Postcondition (must be true after loop exits):**
{loop_postcondition}

**Instructions:**
1. Identify the while loop between the specified tags
2. Extract the loop guard condition B
3. Analyze the loop body to understand what the loop does
4. Generate the weakest possible loop invariant I that:
   - Is true before the first iteration (initialization)
   - Is preserved by each iteration (I AND B => WP(loop_body, I))
   - Combined with loop exit (I AND NOT(B)) establishes the loop 
   postcondition, {loop_postcondition}
5. Express the invariant using logical notation 
(AND, OR, =>, NOT, FORALL, EXISTS)

**A good loop invariant typically includes:**
- Bounds on loop variables (e.g., 0 <= i <= N)
- Relationships between variables (e.g., i < j)
- Quantified properties about arrays/data structures (e.g., 
FORALL(k). 0 <= k < i => a[k] > 0)
- Progress measures (what has been accomplished so far and what 
remains to be accomplished)

Note: when an existential quantifier is needed in the loop 
invariant, perform the following steps:
1. Introduce and initialise a ghost variable before the loop
2. Add a "//@ set" annotation at the end of the loop body to show 
how this variable needs to change
3. Express the invariant in terms of this variable)PROMPT";

const char* const kImp1Template = R"PROMPT(**Task: Verify Implication One (Loop Preservation)**

You are given a loop invariant and must verify that it is 
preserved through one iteration of the loop.

**Segmented Program:**
```java
{segmented_program}
```

**While Loop:**
Loop index: {loop_index} (between tags `// while {loop_index} 
open` and `// while {loop_index} close`)

**Loop Invariant (I):**
{loop_invariant}

**Loop Guard (B):**
{loop_guard}

**Weakest Precondition of Loop Body w.r.t. I:**
WP(loop_body, I) = {wp_loop_body}

**Implication to Verify:**
I AND B => WP(loop_body, I)

**Explanation:**
If the invariant holds and the loop continues (guard is true), 
does executing the loop body preserve the invariant?

**CRITICAL CONSTRAINT:**
A loop invariant must be **self-sufficient** for formal 
verification. You may ONLY use `I AND B` to prove WP(loop_body, I). 
You MUST NOT reference:
- Method preconditions
- Variable values from before the loop
- Any facts not explicitly stated in the invariant I

If you need external facts (like preconditions) to complete the 
proof, the implication **does NOT hold** - the invariant is 
insufficient and must be strengthened.

**Instructions:**
1. Assume ONLY that I and B are true
2. Using ONLY these facts, determine if WP(loop_body, I) 
logically follows
3. Do NOT use preconditions, even if variables are unmodified
4. If you need any additional facts to prove WP(loop_body, I), 
the implication FAILS
5. If it fails, identify exactly what facts are missing from the 
invariant)PROMPT";

const char* const kImp2Template = R"PROMPT(**Task: Verify Implication Two (Loop Termination Correctness)**

You are given a loop invariant and must verify that when the loop 
exits, the desired loop postcondition is satisfied.

**Segmented Program:**
```java
{segmented_program}
```

**While Loop:**
Loop index: {loop_index} (between tags `// while {loop_index} 
open` and `// while {loop_index} close`)

**Loop Invariant (I):**
{loop_invariant}

**Loop Guard (B):**
{loop_guard}

**Loop Postcondition (must be true after loop exits):**
{loop_postcondition}

**Implication to Verify:**
I AND NOT(B) => LoopPostCondition

**Explanation:**
If the invariant holds and the loop exits (guard is false), is 
the loop postcondition satisfied?

**CRITICAL CONSTRAINT:**
A loop invariant must be **self-sufficient** for formal 
verification. You may ONLY use `I AND NOT(B)` to prove the loop 
postcondition. You MUST NOT reference:
- Method preconditions
- Variable values from before the loop
- Any facts not explicitly stated in the invariant I

If you need external facts (like preconditions) to complete the 
proof, the implication **does NOT hold** - the invariant is 
insufficient and must be strengthened.

**Instructions:**
1. Assume ONLY that I and NOT(B) (negation of the loop guard) are 
true
2. Using ONLY these facts, determine if the loop postcondition 
logically follows
3. Do NOT use preconditions, even if variables are unmodified
4. If you need any additional facts to prove the loop 
postcondition, the implication FAILS
5. If it fails, identify exactly what facts are missing from the 
invariant)PROMPT";

const char* const kRefineTemplate = R"PROMPT(**Task: Refine Loop Invariant**

A loop invariant has failed verification. Your task is to refine 
it by strengthening or adjusting it to satisfy the Hoare logic 
requirements.

**Segmented Program:**
```java
{segmented_program}
```

**While Loop:**
Loop index: {loop_index} (between tags `// while {loop_index} 
open` and `// while {loop_index} close`)

**Current Invariant (FAILED):**
{current_invariant}

**Failed Implication:**
{implication_name}

**Failure Reason:**
{failure_reason}

{refinement_guidance}

**Instructions:**
1. Analyze why the current invariant failed
2. Identify what additional conditions or strengthenings are 
needed
3. Propose a refined invariant that:
   - Still holds initially (before the first iteration)
   - Is strong enough to pass the failed implication
   - Is not overly restrictive (can be maintained by the loop)
4. Explain your refinement strategy)PROMPT";

const char* const kJmlTemplate = R"PROMPT(**Task: Convert Loop Invariants to JML**

Insert the loop invariants listed below into the program as JML annotations. Place one `//@ loop_invariant <formula>;` line per conjunct immediately before the corresponding `while` loop. Leave all other code and specifications unchanged.

**Loop Invariants:**
{invariants}

**Program:**
```java
{program}
```)PROMPT";

const char* const kRepairTemplate = R"PROMPT(**Task**
For the Java method {method_name} shown below (under **Program**), 
repair ONLY the loop specifications to resolve the 
verification issues identified by OpenJML. 
Specifically:
- You MAY modify loop invariants and, if present, the loop 
variant (decreases clause).
- You MUST NOT modify method preconditions, postconditions, 
assignable clauses, or any other JML specifications outside of 
the loop.
- You MUST NOT modify the Java code.

The OpenJML output (under **OpenJML Output**) describes the 
failures. Use it carefully to strengthen the loop invariant and/
or adjust the variant to ensure inductiveness and termination as 
required.

**Scope**
- Allowed changes:
  - Loop invariants
  - Loop variants (if present)
- Forbidden changes (leave exactly as-is):
  - Method-level requires/ensures/assignable clauses
  - Class-level specifications
  - Any Java implementation code

**Deliverable**
Return the complete program with only the loop invariant(s) (and 
variant(s), if present) updated. Do not include explanations or 
comments beyond what is explicitly requested.

**OpenJML Output**
{openjml_output}

**Program**
{program})PROMPT";

const char* const kImp1Guidance = R"PROMPT(**Refinement Strategy for Implication One:**
- The invariant is not preserved through the loop body
- The invariant must be self-sufficient - it cannot rely on 
preconditions or external facts
- Consider strengthening the invariant by adding conditions about:
  - Facts from preconditions about unmodified variables/arrays 
  (if needed to prove preservation)
  - Variables modified in the loop body
  - Relationships that must be maintained across iterations
  - Bounds that are always respected
  - Properties that hold before and after each iteration
- Ensure the strengthened invariant still allows initialization 
(holds before first iteration))PROMPT";

const char* const kImp2Guidance = R"PROMPT(**Refinement Strategy for Implication Two:**
- The invariant + loop exit doesn't imply the loop postcondition
- The invariant must be self-sufficient - it cannot rely on 
preconditions or external facts
- Consider strengthening the invariant to explicitly include:
  - Facts from preconditions about unmodified variables/arrays 
  (e.g., if precondition says a[k] >= k and 'a' is never 
  modified, add this to the invariant)
  - Properties that hold throughout but aren't stated in the 
  current invariant
  - What has been accomplished when the loop exits
  - Relationships needed for the loop postcondition
  - Quantified properties over the full range
- Ensure the strengthened invariant can still be preserved by the 
loop)PROMPT";

}  // namespace invgen::internal
