def analyze_values(nums: list[int], divisor: int) -> int:
    # Sum the values divisible by k
    total = 0
    for element in nums:
        if element % divisor == 0:
            total += element

    # Count pairs whose sum is divisible by k
    valid_pairs = 0
    for idx in range(0, len(nums)):
        for other_index in range(idx + 1, len(nums)):
            if (nums[idx] + nums[other_index]) % divisor == 0:
                valid_pairs += 1

    # Collect doubled values larger than k
    filtered_values = []
    for idx in range(len(nums)):
        if nums[idx] > divisor:
            filtered_values.append(nums[idx] * 2)

    # Flag even-length input
    is_even_length = 1 if len(nums) % 2 == 0 else 0

    # Track the largest value
    best_value = nums[0]
    for current in nums:
        if current > best_value:
            best_value = current
    # Count how many times the size can be halved
    current_size = len(nums)
    step_count = 0
    while current_size > 0:
        current_size //= 2
        step_count += 1

    return total + valid_pairs + len(filtered_values) + is_even_length + best_value + step_count

if __name__ == "__main__":
    nums = [3, 6, 9, 12, 15]
    print(analyze_values(nums, 3))
