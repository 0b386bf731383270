def compute_total(values, divisor):
    max_value = values[0]
    for candidate in values:
        if candidate > max_value:
            max_value = candidate
    current_size = len(values)
    steps = 0
    while current_size > 0:
        current_size //= 2
        steps += 1

    valid_pairs = 0
    for index in range(0, len(values)):
        for j in range(index + 1, len(values)):
            if (values[index] + values[j]) % divisor == 0:
                valid_pairs += 1

    return max_value + steps + valid_pairs

if __name__ == "__main__":
    values = [3, 6, 9, 12, 15]
    print(compute_total(values, 3))
