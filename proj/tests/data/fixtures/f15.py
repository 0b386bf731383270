def compute_total(values, k):
    """Return a summary statistic of the input values."""
    # Sum the values divisible by k
    total_sum = 0
    for num in values:
        if num % k == 0:
            total_sum += num

    filtered_values = []
    for idx in range(len(values)):
        if values[idx] > k:
            filtered_values.append(values[idx] * 2)
    parity_flag = 1 if len(values) % 2 == 0 else 0
    best_value = values[0]
    for candidate in values:
        if candidate > best_value:
            best_value = candidate

    return total_sum + len(filtered_values) + parity_flag + best_value

if __name__ == "__main__":
    values = [3, 6, 9, 12, 15]
    print(compute_total(values, 3))
