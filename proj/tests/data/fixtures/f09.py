def analyze_values(values: list[int], divisor: int) -> int:
    running_total = 0
    for value in values:
        if value % divisor == 0:
            running_total += value

    # Flag even-length input
    is_even_length = 1 if len(values) % 2 == 0 else 0

    current_size = len(values)
    steps = 0
    while current_size > 0:
        current_size //= 2
        steps += 1

    # Count pairs whose sum is divisible by k
    valid_pairs = 0
    for i in range(0, len(values)):
        for other_index in range(i + 1, len(values)):
            if (values[i] + values[other_index]) % divisor == 0:
                valid_pairs += 1
    largest = values[0]
    for item in values:
        if item > largest:
            largest = item
    return running_total + is_even_length + steps + valid_pairs + largest

if __name__ == "__main__":
    values = [3, 6, 9, 12, 15]
    print(analyze_values(values, 3))
