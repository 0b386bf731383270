def process_numbers(values, k):
    # Count pairs whose sum is divisible by k
    pair_count = 0
    for idx in range(len(values)):
        for j in range(idx + 1, len(values)):
            if (values[idx] + values[j]) % k == 0:
                pair_count += 1
    max_value = values[0]
    for current in values:
        if current > max_value:
            max_value = current
    # Collect doubled values larger than k
    doubled_values = []
    for idx in range(len(values)):
        if values[idx] > k:
            doubled_values.append(values[idx] * 2)

    return pair_count + max_value + len(doubled_values)

if __name__ == "__main__":
    values = [3, 6, 9, 12, 15]
    print(process_numbers(values, 3))
